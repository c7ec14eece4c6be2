#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "codejudge/common.hpp"
#include "codejudge/sandbox.hpp"

namespace codejudge {

// ============================================================
// Pairwise preference machinery: binary outcome reward against a
// reference, swap-consistency regularizer, linear trainable scorer.
// ============================================================

struct ResponsePair {
    std::string context;
    std::string response_a;
    std::string response_b;
};

enum class PairOutcome { a_wins, b_wins, tie };

inline std::string_view pair_outcome_name(PairOutcome o) {
    switch (o) {
        case PairOutcome::a_wins: return "a_wins";
        case PairOutcome::b_wins: return "b_wins";
        case PairOutcome::tie: return "tie";
    }
    std::abort();
}

inline std::optional<PairOutcome> parse_pair_outcome(std::string_view name) {
    if (name == "a_wins") return PairOutcome::a_wins;
    if (name == "b_wins") return PairOutcome::b_wins;
    if (name == "tie") return PairOutcome::tie;
    return std::nullopt;
}

struct PairJudgment {
    PairOutcome outcome;
    double margin;  // signed, positive favors a
};

inline PairJudgment classify_margin(double margin, double tie_threshold) {
    if (std::abs(margin) <= tie_threshold) return {PairOutcome::tie, margin};
    return {margin > 0 ? PairOutcome::a_wins : PairOutcome::b_wins, margin};
}

// ============================================================
// Hand-engineered text features (a cheap stand-in for a learned
// encoder, swappable behind a feature-extractor id)
// ============================================================

class TextStatFeatures {
  public:
    static constexpr int dim = 8;
    static constexpr const char* id = "textstat-v1";

    std::vector<double> operator()(const std::string& context,
                                   const std::string& response) const {
        auto tokens = split_ws(response);
        std::set<std::string_view> distinct(tokens.begin(), tokens.end());
        double n_chars = static_cast<double>(response.size());
        double n_tokens = static_cast<double>(tokens.size());

        double token_len_sum = 0.0;
        for (auto t : tokens) token_len_sum += static_cast<double>(t.size());

        auto ctx_tokens = split_ws(context);
        std::set<std::string_view> ctx_set(ctx_tokens.begin(), ctx_tokens.end());
        double inter = 0.0;
        for (auto t : distinct) inter += ctx_set.count(t) ? 1.0 : 0.0;
        double uni = static_cast<double>(distinct.size() + ctx_set.size()) - inter;

        double fences = 0.0;
        for (std::size_t pos = 0; (pos = response.find("```", pos)) != std::string::npos;
             pos += 3)
            fences += 1.0;

        double digits = 0.0, punct = 0.0;
        for (unsigned char c : response) {
            if (std::isdigit(c)) digits += 1.0;
            if (std::ispunct(c)) punct += 1.0;
        }

        return {
            std::log1p(n_chars),
            std::log1p(n_tokens),
            std::log1p(static_cast<double>(distinct.size())),
            n_tokens > 0 ? token_len_sum / n_tokens : 0.0,
            uni > 0 ? inter / uni : 0.0,
            fences / 2.0,  // fence pairs
            n_chars > 0 ? digits / n_chars : 0.0,
            n_chars > 0 ? punct / n_chars : 0.0,
        };
    }
};

// ============================================================
// Linear scorer: d(ctx, a, b) = w . (phi(ctx,a) - phi(ctx,b)),
// antisymmetric by construction.
// ============================================================

struct PairwiseScorer {
    int feature_dim = TextStatFeatures::dim;
    std::vector<double> weights = std::vector<double>(TextStatFeatures::dim, 0.0);
    std::string feature_extractor_id = TextStatFeatures::id;

    double score(const std::string& context, const std::string& a,
                 const std::string& b) const {
        TextStatFeatures phi;
        auto fa = phi(context, a);
        auto fb = phi(context, b);
        double d = 0.0;
        for (int i = 0; i < feature_dim; ++i)
            d += weights[static_cast<std::size_t>(i)] *
                 (fa[static_cast<std::size_t>(i)] - fb[static_cast<std::size_t>(i)]);
        return d;
    }

    nlohmann::json to_json() const {
        return {{"feature_extractor_id", feature_extractor_id},
                {"feature_dim", feature_dim},
                {"weights", weights}};
    }

    static PairwiseScorer from_json(const nlohmann::json& j) {
        PairwiseScorer s;
        s.feature_extractor_id = j.at("feature_extractor_id").get<std::string>();
        s.feature_dim = j.at("feature_dim").get<int>();
        s.weights = j.at("weights").get<std::vector<double>>();
        if (static_cast<int>(s.weights.size()) != s.feature_dim)
            throw SerializationFailure("scorer weights length != feature_dim");
        return s;
    }
};

// Any callable (ctx, a, b) -> signed margin; external scorers need not be
// antisymmetric, which is exactly what the regularizer measures.
using PairScoreFn =
    std::function<double(const std::string&, const std::string&, const std::string&)>;

inline double swap_consistency_loss(const PairScoreFn& score,
                                    const std::vector<ResponsePair>& batch) {
    if (batch.empty()) throw UserError("swap_consistency_loss: empty batch");
    double sum = 0.0;
    for (const auto& p : batch) {
        double fwd = score(p.context, p.response_a, p.response_b);
        double rev = score(p.context, p.response_b, p.response_a);
        double gap = fwd - (-rev);
        sum += gap * gap;
    }
    return sum / static_cast<double>(batch.size());
}

// ============================================================
// Judges: cached built-in scorer or external MARGIN-protocol command
// ============================================================

class CachingPairJudge {
  public:
    CachingPairJudge(PairScoreFn score, double tie_threshold = 0.0)
        : score_(std::move(score)), tie_threshold_(tie_threshold) {}

    PairJudgment judge(const std::string& context, const std::string& a,
                       const std::string& b) {
        std::uint64_t h = fnv1a64(context);
        h = fnv1a64("\x1f", h);
        h = fnv1a64(a, h);
        h = fnv1a64("\x1f", h);
        h = fnv1a64(b, h);
        auto it = cache_.find(h);
        double margin;
        if (it != cache_.end()) {
            margin = it->second;
        } else {
            margin = score_(context, a, b);
            cache_.emplace(h, margin);
        }
        return classify_margin(margin, tie_threshold_);
    }

    std::size_t cache_size() const { return cache_.size(); }

  private:
    PairScoreFn score_;
    double tie_threshold_;
    std::unordered_map<std::uint64_t, double> cache_;
};

// 1 if the rollout beats the reference, 0 if it loses, 0.5 on a tie.
inline double binary_outcome_reward(const std::string& rollout_response,
                                    const std::string& reference_response,
                                    const std::string& context, CachingPairJudge& judge) {
    PairJudgment j = judge.judge(context, rollout_response, reference_response);
    switch (j.outcome) {
        case PairOutcome::a_wins: return 1.0;
        case PairOutcome::b_wins: return 0.0;
        case PairOutcome::tie: return 0.5;
    }
    std::abort();
}

struct ExternalPairJudge {
    std::vector<std::string> argv;

    double operator()(const std::string& context, const std::string& a,
                      const std::string& b) const {
        nlohmann::json request = {
            {"context", context}, {"response_a", a}, {"response_b", b}};
        detail::SpawnRequest req;
        req.argv = argv;
        std::string input = request.dump() + "\n";
        req.stdin_data = input;
        ResourceLimits lim;
        lim.wall_timeout = std::chrono::milliseconds(60'000);
        lim.cpu_timeout = lim.wall_timeout;
        req.limits = lim;
        detail::TempDir dir;
        req.workdir = dir.path();

        ExecutionResult r = detail::spawn_capture(req);
        if (r.status != RunStatus::ok)
            throw ExternalJudgeProtocolError("pair judge failed (" +
                                             std::string(run_status_name(r.status)) + ")");
        std::string line = r.stdout_data;
        if (auto nl = line.find('\n'); nl != std::string::npos) line.resize(nl);
        auto words = split_ws(line);
        if (words.size() != 2 || words[0] != "MARGIN")
            throw ExternalJudgeProtocolError("expected 'MARGIN <decimal>', got '" + line + "'");
        try {
            return std::stod(std::string(words[1]));
        } catch (const std::exception&) {
            throw ExternalJudgeProtocolError("unparseable margin '" + std::string(words[1]) +
                                             "'");
        }
    }
};

// ============================================================
// Training: logistic preference loss + lambda_swap * swap loss on a
// swap-augmented batch; full-batch gradient descent from zero.
// ============================================================

struct TrainConfig {
    double learning_rate = 0.5;
    int epochs = 300;
    double lambda_swap = 0.1;
    std::uint64_t seed = 0;
};

struct TrainResult {
    PairwiseScorer scorer;
    std::vector<double> loss_curve;  // loss evaluated at the start of each epoch
    double final_accuracy = 0.0;     // on the non-tie training pairs
};

using LabeledPair = std::pair<ResponsePair, PairOutcome>;

namespace detail {

struct PreparedPairs {
    // one row per non-tie example: x = phi(winner) - phi(loser)
    std::vector<std::vector<double>> x;
    // swap-augmented regularizer rows: s = (phi(a)-phi(b)) + (phi(b)-phi(a));
    // identically zero for the built-in scorer, kept for the general formula
    std::vector<std::vector<double>> s;
};

inline PreparedPairs prepare_pairs(const std::vector<LabeledPair>& labeled) {
    TextStatFeatures phi;
    PreparedPairs out;
    for (const auto& [pair, outcome] : labeled) {
        auto fa = phi(pair.context, pair.response_a);
        auto fb = phi(pair.context, pair.response_b);
        std::vector<double> diff(TextStatFeatures::dim);
        for (int i = 0; i < TextStatFeatures::dim; ++i)
            diff[static_cast<std::size_t>(i)] = fa[static_cast<std::size_t>(i)] -
                                                fb[static_cast<std::size_t>(i)];
        if (outcome != PairOutcome::tie) {
            std::vector<double> x = diff;
            if (outcome == PairOutcome::b_wins)
                for (double& v : x) v = -v;
            out.x.push_back(std::move(x));
        }
        // the swapped twin contributes (phi(b)-phi(a)), so the row sums to zero
        std::vector<double> s(TextStatFeatures::dim, 0.0);
        for (int i = 0; i < TextStatFeatures::dim; ++i)
            s[static_cast<std::size_t>(i)] =
                diff[static_cast<std::size_t>(i)] + (-diff[static_cast<std::size_t>(i)]);
        out.s.push_back(std::move(s));
    }
    return out;
}

inline double stable_log1pexp(double z) {
    // log(1 + e^z) without overflow
    if (z > 0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

}  // namespace detail

// Loss and gradient of the full training objective at the given weights;
// exposed so finite-difference checks can probe arbitrary points.
inline double pairwise_objective(const std::vector<double>& weights,
                                 const detail::PreparedPairs& prep, double lambda_swap,
                                 std::vector<double>* grad_out = nullptr) {
    std::size_t d = weights.size();
    std::vector<double> grad(d, 0.0);
    double loss = 0.0;

    double m = static_cast<double>(prep.x.size());
    for (const auto& x : prep.x) {
        double z = 0.0;
        for (std::size_t i = 0; i < d; ++i) z += weights[i] * x[i];
        loss += detail::stable_log1pexp(-z) / m;
        double sig = 1.0 / (1.0 + std::exp(z));  // sigma(-z)
        for (std::size_t i = 0; i < d; ++i) grad[i] -= sig * x[i] / m;
    }

    if (!prep.s.empty() && lambda_swap != 0.0) {
        double b = static_cast<double>(prep.s.size());
        for (const auto& s : prep.s) {
            double gap = 0.0;
            for (std::size_t i = 0; i < d; ++i) gap += weights[i] * s[i];
            loss += lambda_swap * gap * gap / b;
            for (std::size_t i = 0; i < d; ++i)
                grad[i] += lambda_swap * 2.0 * gap * s[i] / b;
        }
    }
    if (grad_out) *grad_out = std::move(grad);
    return loss;
}

inline TrainResult train_pairwise_scorer(const std::vector<LabeledPair>& labeled,
                                         const TrainConfig& config) {
    if (labeled.empty()) throw UserError("train_pairwise_scorer: empty dataset");
    detail::PreparedPairs prep = detail::prepare_pairs(labeled);
    if (prep.x.empty()) throw EmptyAfterTieFiltering();

    TrainResult result;
    std::vector<double>& w = result.scorer.weights;  // zero-initialized
    std::vector<double> grad;
    int rising = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double loss = pairwise_objective(w, prep, config.lambda_swap, &grad);
        result.loss_curve.push_back(loss);
        rising = loss > prev ? rising + 1 : 0;
        if (rising >= 5) throw DivergenceDetected(epoch);
        prev = loss;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= config.learning_rate * grad[i];
    }

    int correct = 0;
    for (const auto& x : prep.x) {
        double z = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) z += w[i] * x[i];
        if (z > 0) ++correct;
    }
    result.final_accuracy = static_cast<double>(correct) / static_cast<double>(prep.x.size());
    return result;
}

}  // namespace codejudge
