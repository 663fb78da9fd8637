#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "draftwatch/forecast/forecaster.hpp"

namespace httplib {
class Client;
}

namespace draftwatch::forecast {

// Fetches scores from a running service's POST /v1/score endpoint, so an
// external model can sit behind the same wire format. Transport or protocol
// failures throw Error(kRemote).
class RemoteForecaster final : public Forecaster {
 public:
  RemoteForecaster(const std::string& base_url, std::string credential);
  ~RemoteForecaster() override;

  RiskScore ScoreChain(const CommentChain& chain) const override;
  RiskScore ScoreWithDraft(const CommentChain& chain, std::string_view draft) const override;

 private:
  RiskScore Fetch(const CommentChain& chain, std::string_view draft) const;

  std::string credential_;
  mutable std::mutex mu_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace draftwatch::forecast
