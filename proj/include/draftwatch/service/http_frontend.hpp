#pragma once

#include "draftwatch/error.hpp"
#include "draftwatch/service/service.hpp"

namespace httplib {
class Server;
}

namespace draftwatch::service {

// HTTP status for a service error (401 credential, 403 not activated,
// 404 unknown interaction, 409 closed, 400 bad request).
int HttpStatusFor(Errc code);

// Registers the JSON wire protocol on `server`:
//   POST /v1/activate                     {credential}
//   POST /v1/interaction/open             {credential, post_id, target_comment_id, comments, client_t?}
//   POST /v1/interaction/{id}/snapshot    {draft_text, client_t?}
//   POST /v1/interaction/{id}/finalize    {outcome}
//   POST /v1/score                        {credential, comments, draft?}
//   GET  /v1/health
// Errors answer {"error": <name>, "message": <text>}.
void RegisterRoutes(httplib::Server& server, Service& service);

}  // namespace draftwatch::service
