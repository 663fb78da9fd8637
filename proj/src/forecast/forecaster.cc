#include "draftwatch/forecast/forecaster.hpp"

#include <cmath>
#include <set>

#include "draftwatch/embedded_data.hpp"
#include "draftwatch/error.hpp"
#include "draftwatch/text/tokenize.hpp"

namespace draftwatch::forecast {

CommentChain::CommentChain(std::vector<Comment> comments) : comments_(std::move(comments)) {
  if (comments_.empty()) throw Error(Errc::kEmptyChain, "comment chain is empty");
  std::set<std::string_view> ids;
  for (const auto& c : comments_) {
    if (text::IsBlank(c.text)) throw Error(Errc::kInvalidArgument, "comment '" + c.id + "' has blank text");
    if (!ids.insert(c.id).second) throw Error(Errc::kInvalidArgument, "duplicate comment id '" + c.id + "'");
  }
}

CommentChain CommentChain::Append(Comment c) const {
  auto copy = comments_;
  copy.push_back(std::move(c));
  return CommentChain(std::move(copy));
}

RiskScore::RiskScore(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(Errc::kInvalidArgument, "risk score " + std::to_string(value) + " outside [0,1]");
  }
}

namespace {

class GenericDraftScorer final : public DraftScorer {
 public:
  GenericDraftScorer(const Forecaster& forecaster, CommentChain chain)
      : forecaster_(forecaster), chain_(std::move(chain)), context_(forecaster_.ScoreChain(chain_)) {}

  RiskScore Context() const override { return context_; }
  RiskScore Score(std::string_view draft) const override {
    if (text::IsBlank(draft)) return context_;
    return forecaster_.ScoreWithDraft(chain_, draft);
  }

 private:
  const Forecaster& forecaster_;
  CommentChain chain_;
  RiskScore context_;
};

class ReferenceDraftScorer final : public DraftScorer {
 public:
  ReferenceDraftScorer(const ReferenceForecaster& forecaster, std::vector<FeatureVector> features)
      : forecaster_(forecaster), features_(std::move(features)), context_(forecaster_.ScoreFeatures(features_)) {
    features_.emplace_back();
  }

  RiskScore Context() const override { return context_; }
  RiskScore Score(std::string_view draft) const override {
    if (text::IsBlank(draft)) return context_;
    std::vector<FeatureVector> elements = features_;
    elements.back() = forecaster_.extractor().Extract(draft);
    return forecaster_.ScoreFeatures(elements);
  }

 private:
  const ReferenceForecaster& forecaster_;
  std::vector<FeatureVector> features_;  // chain features plus a slot for the draft
  RiskScore context_;
};

double ParseNumber(std::string_view key, std::string_view value) {
  std::string s(value);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw Error(Errc::kBadConfig, "bad value '" + s + "' for key '" + std::string(key) + "'");
  }
  return v;
}

}  // namespace

std::unique_ptr<DraftScorer> Forecaster::Prepare(const CommentChain& chain) const {
  return std::make_unique<GenericDraftScorer>(*this, chain);
}

ForecasterConfig ForecasterConfig::Parse(std::string_view contents) {
  ForecasterConfig cfg;
  for (const auto& line : text::DataLines(contents)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::kBadConfig, "expected 'key = value', got '" + line + "'");
    std::string key(text::Trim(std::string_view(line).substr(0, eq)));
    std::string_view value = text::Trim(std::string_view(line).substr(eq + 1));
    if (key == "bias") {
      cfg.bias = ParseNumber(key, value);
    } else if (key == "half_life") {
      cfg.half_life = ParseNumber(key, value);
      if (cfg.half_life <= 0) throw Error(Errc::kBadConfig, "half_life must be positive");
    } else if (key.starts_with("weight.")) {
      auto feature = FeatureFromName(std::string_view(key).substr(7));
      if (!feature) throw Error(Errc::kBadConfig, "unknown feature in key '" + key + "'");
      cfg.weights[static_cast<std::size_t>(*feature)] = ParseNumber(key, value);
    } else {
      throw Error(Errc::kBadConfig, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

ForecasterConfig ForecasterConfig::Load(const std::filesystem::path& path) { return Parse(text::ReadFile(path)); }

ForecasterConfig ForecasterConfig::Embedded() { return Parse(EmbeddedFile("forecaster.conf")); }

ReferenceForecaster::ReferenceForecaster() : ReferenceForecaster(FeatureExtractor(), ForecasterConfig::Embedded()) {}

ReferenceForecaster::ReferenceForecaster(FeatureExtractor extractor, ForecasterConfig config)
    : extractor_(std::move(extractor)), config_(config) {}

RiskScore ReferenceForecaster::ScoreFeatures(std::span<const FeatureVector> elements) const {
  if (elements.empty()) throw Error(Errc::kEmptyChain, "nothing to score");
  const std::size_t n = elements.size();
  std::array<double, kNumFeatures> mean{};
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::exp2(-static_cast<double>(n - 1 - i) / config_.half_life);
    weight_sum += w;
    for (std::size_t f = 0; f < kNumFeatures; ++f) mean[f] += w * elements[i].values[f];
  }
  double z = config_.bias;
  for (std::size_t f = 0; f < kNumFeatures; ++f) z += config_.weights[f] * (mean[f] / weight_sum);
  return RiskScore(1.0 / (1.0 + std::exp(-z)));
}

std::vector<FeatureVector> ReferenceForecaster::ChainFeatures(const CommentChain& chain) const {
  std::vector<FeatureVector> out;
  out.reserve(chain.size() + 1);
  for (const auto& c : chain.comments()) out.push_back(extractor_.Extract(c.text));
  return out;
}

RiskScore ReferenceForecaster::ScoreChain(const CommentChain& chain) const {
  return ScoreFeatures(ChainFeatures(chain));
}

RiskScore ReferenceForecaster::ScoreWithDraft(const CommentChain& chain, std::string_view draft) const {
  auto features = ChainFeatures(chain);
  if (!text::IsBlank(draft)) features.push_back(extractor_.Extract(draft));
  return ScoreFeatures(features);
}

std::unique_ptr<DraftScorer> ReferenceForecaster::Prepare(const CommentChain& chain) const {
  return std::make_unique<ReferenceDraftScorer>(*this, ChainFeatures(chain));
}

}  // namespace draftwatch::forecast
