#include "draftwatch/forecast/remote_forecaster.hpp"

#include "draftwatch/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace draftwatch::forecast {

RemoteForecaster::RemoteForecaster(const std::string& base_url, std::string credential)
    : credential_(std::move(credential)), client_(std::make_unique<httplib::Client>(base_url)) {
  client_->set_tcp_nodelay(true);
}

RemoteForecaster::~RemoteForecaster() = default;

RiskScore RemoteForecaster::ScoreChain(const CommentChain& chain) const { return Fetch(chain, ""); }

RiskScore RemoteForecaster::ScoreWithDraft(const CommentChain& chain, std::string_view draft) const {
  return Fetch(chain, draft);
}

RiskScore RemoteForecaster::Fetch(const CommentChain& chain, std::string_view draft) const {
  nlohmann::json comments = nlohmann::json::array();
  for (const auto& c : chain.comments()) {
    comments.push_back({{"id", c.id}, {"author", c.author}, {"text", c.text}, {"posted_at", c.posted_at}});
  }
  const nlohmann::json body = {{"credential", credential_}, {"comments", comments}, {"draft", draft}};
  httplib::Result res;
  {
    std::lock_guard lock(mu_);
    res = client_->Post("/v1/score", body.dump(), "application/json");
  }
  if (!res) throw Error(Errc::kRemote, "scoring request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw Error(Errc::kRemote, "scoring request returned " + std::to_string(res->status) + ": " + res->body);
  try {
    return RiskScore(nlohmann::json::parse(res->body).at("score").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kRemote, std::string("malformed scoring response: ") + e.what());
  }
}

}  // namespace draftwatch::forecast
