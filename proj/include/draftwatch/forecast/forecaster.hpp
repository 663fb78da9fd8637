#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "draftwatch/forecast/features.hpp"

namespace draftwatch::forecast {

struct Comment {
  std::string id;
  std::string author;
  std::string text;
  double posted_at = 0.0;  // epoch seconds

  bool operator==(const Comment&) const = default;
};

// Conversation context in reply-to order: root post first, reply target last.
// Construction enforces: at least one comment (EmptyChain), unique ids and
// non-blank text (InvalidArgument).
class CommentChain {
 public:
  explicit CommentChain(std::vector<Comment> comments);

  const std::vector<Comment>& comments() const { return comments_; }
  std::size_t size() const { return comments_.size(); }
  const Comment& back() const { return comments_.back(); }

  CommentChain Append(Comment c) const;

 private:
  std::vector<Comment> comments_;
};

// Probability that the next comment is uncivil.
class RiskScore {
 public:
  // Throws InvalidArgument outside [0,1] or for NaN.
  explicit RiskScore(double value);

  double value() const { return value_; }
  auto operator<=>(const RiskScore&) const = default;

 private:
  double value_;
};

// Scores successive drafts against one fixed context. Implementations may
// cache per-context work.
class DraftScorer {
 public:
  virtual ~DraftScorer() = default;
  virtual RiskScore Context() const = 0;
  // A blank draft scores as the context alone.
  virtual RiskScore Score(std::string_view draft) const = 0;
};

// The forecasting contract: chain -> p(next comment uncivil). Implementations
// must be safe to call concurrently.
class Forecaster {
 public:
  virtual ~Forecaster() = default;

  virtual RiskScore ScoreChain(const CommentChain& chain) const = 0;
  // Equals ScoreChain(chain + draft as a trailing comment); a blank draft
  // yields ScoreChain(chain).
  virtual RiskScore ScoreWithDraft(const CommentChain& chain, std::string_view draft) const = 0;

  virtual std::unique_ptr<DraftScorer> Prepare(const CommentChain& chain) const;
};

struct ForecasterConfig {
  double bias = 0.0;
  double half_life = 2.0;  // in comments
  std::array<double, kNumFeatures> weights{};

  // Key-value text: "bias = x", "half_life = x", "weight.<feature> = x".
  // Unknown keys and malformed values throw BadConfig.
  static ForecasterConfig Parse(std::string_view contents);
  static ForecasterConfig Load(const std::filesystem::path& path);
  static ForecasterConfig Embedded();
};

// Logistic model over recency-weighted mean features. Element i of n
// (0-based, draft last) has weight 0.5^((n-1-i)/half_life); the weighted
// mean is normalized by the weight sum.
class ReferenceForecaster final : public Forecaster {
 public:
  ReferenceForecaster();  // embedded lexicons and configuration
  ReferenceForecaster(FeatureExtractor extractor, ForecasterConfig config);

  RiskScore ScoreChain(const CommentChain& chain) const override;
  RiskScore ScoreWithDraft(const CommentChain& chain, std::string_view draft) const override;
  std::unique_ptr<DraftScorer> Prepare(const CommentChain& chain) const override;

  RiskScore ScoreFeatures(std::span<const FeatureVector> elements) const;
  std::vector<FeatureVector> ChainFeatures(const CommentChain& chain) const;

  const FeatureExtractor& extractor() const { return extractor_; }
  const ForecasterConfig& config() const { return config_; }

 private:
  FeatureExtractor extractor_;
  ForecasterConfig config_;
};

}  // namespace draftwatch::forecast
