#include "draftwatch/service/http_frontend.hpp"

#include "draftwatch/error.hpp"
#include "draftwatch/service/json_codec.hpp"
#include "httplib.h"

namespace draftwatch::service {
namespace {

constexpr const char* kJson = "application/json";

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void ReplyError(httplib::Response& res, Errc code, const std::string& message) {
  Reply(res, HttpStatusFor(code), {{"error", ErrcName(code)}, {"message", message}});
}

std::optional<double> OptionalTime(const json& body, const char* key) {
  if (!body.contains(key) || body.at(key).is_null()) return std::nullopt;
  return body.at(key).get<double>();
}

// Parses the body, runs `fn`, and maps failures onto status codes.
template <typename Fn>
httplib::Server::Handler Guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      json body = req.body.empty() ? json::object() : json::parse(req.body);
      if (!body.is_object()) throw Error(Errc::kInvalidArgument, "request body must be a JSON object");
      Reply(res, 200, fn(req, body));
    } catch (const Error& e) {
      ReplyError(res, e.code(), e.what());
    } catch (const json::exception& e) {
      ReplyError(res, Errc::kInvalidArgument, e.what());
    }
  };
}

}  // namespace

int HttpStatusFor(Errc code) {
  switch (code) {
    case Errc::kUnknownCredential:
    case Errc::kRevokedCredential: return 401;
    case Errc::kNotActivated: return 403;
    case Errc::kUnknownInteraction: return 404;
    case Errc::kClosedInteraction:
    case Errc::kAlreadyClosed: return 409;
    case Errc::kIo: return 500;
    default: return 400;
  }
}

void RegisterRoutes(httplib::Server& server, Service& service) {
  server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, {{"status", "ok"}});
  });

  server.Post("/v1/activate", Guarded([&service](const httplib::Request&, const json& body) {
                Session s = service.Activate(body.at("credential").get<std::string>());
                return json{{"user_id", s.user_id}, {"phase", s.phase}, {"activated_at", s.activated_at}};
              }));

  server.Post("/v1/interaction/open", Guarded([&service](const httplib::Request&, const json& body) {
                auto result = service.Open(body.at("credential").get<std::string>(),
                                           body.at("post_id").get<std::string>(),
                                           body.at("target_comment_id").get<std::string>(),
                                           CommentsFromJson(body.at("comments")), OptionalTime(body, "client_t"));
                json out = {{"interaction_id", result.interaction.id},
                            {"condition_visible", result.condition_visible}};
                if (result.assessment) out["directives"] = ToJson(result.assessment->display);
                return out;
              }));

  server.Post(R"(/v1/interaction/([^/]+)/snapshot)",
              Guarded([&service](const httplib::Request& req, const json& body) {
                auto result = service.Snapshot(req.matches[1].str(), body.at("draft_text").get<std::string>(),
                                               OptionalTime(body, "client_t"));
                json out = json::object();
                if (result.assessment) out["directives"] = ToJson(result.assessment->display);
                return out;
              }));

  server.Post(R"(/v1/interaction/([^/]+)/finalize)",
              Guarded([&service](const httplib::Request& req, const json& body) {
                auto in = service.Finalize(req.matches[1].str(), ParseOutcome(body.at("outcome").get<std::string>()));
                return json{{"interaction_id", in.id}, {"outcome", OutcomeName(in.outcome)}};
              }));

  server.Post("/v1/score", Guarded([&service](const httplib::Request&, const json& body) {
                auto score = service.Score(body.at("credential").get<std::string>(),
                                           CommentsFromJson(body.at("comments")),
                                           body.value("draft", std::string()));
                return json{{"score", score.value()}};
              }));
}

}  // namespace draftwatch::service
