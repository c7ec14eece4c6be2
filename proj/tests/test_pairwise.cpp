#include <doctest.h>

#include <cmath>
#include <random>

#include "codejudge/pairwise.hpp"
#include "test_support.hpp"

using namespace codejudge;

namespace {

std::vector<ResponsePair> random_pairs(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto word = [&] {
        std::string w;
        for (int i = 0; i < 1 + static_cast<int>(rng() % 8); ++i)
            w.push_back(static_cast<char>('a' + rng() % 26));
        return w;
    };
    auto text = [&] {
        std::string t;
        for (int i = 0; i < 3 + static_cast<int>(rng() % 40); ++i) {
            t += word();
            t.push_back(rng() % 5 ? ' ' : '\n');
        }
        if (rng() % 2) t += "```python\nprint(" + word() + ")\n```\n";
        return t;
    };
    std::vector<ResponsePair> out;
    for (int i = 0; i < n; ++i) out.push_back({text(), text(), text()});
    return out;
}

// separable toy set: winners carry a fenced block, losers are prose
std::vector<LabeledPair> separable_set(int n) {
    std::vector<LabeledPair> out;
    for (int i = 0; i < n; ++i) {
        std::string code = "```python\nprint(" + std::to_string(i) + ")\n```";
        std::string prose = "I think the answer is probably " + std::to_string(i);
        if (i % 2 == 0)
            out.push_back({{"ctx", code, prose}, PairOutcome::a_wins});
        else
            out.push_back({{"ctx", prose, code}, PairOutcome::b_wins});
    }
    return out;
}

}  // namespace

TEST_SUITE("pairwise") {

TEST_CASE("margin classification with tie threshold") {
    CHECK(classify_margin(0.3, 0.1).outcome == PairOutcome::a_wins);
    CHECK(classify_margin(-0.3, 0.1).outcome == PairOutcome::b_wins);
    CHECK(classify_margin(0.05, 0.1).outcome == PairOutcome::tie);
    CHECK(classify_margin(-0.1, 0.1).outcome == PairOutcome::tie);  // inclusive
    CHECK(classify_margin(0.0, 0.0).outcome == PairOutcome::tie);
}

TEST_CASE("feature extractor has the advertised shape") {
    TextStatFeatures phi;
    auto f = phi("ctx", "two words ```x``` 12!");
    CHECK(static_cast<int>(f.size()) == TextStatFeatures::dim);
    CHECK(std::string(TextStatFeatures::id) == "textstat-v1");
    CHECK(f[5] == doctest::Approx(1.0));  // two fence markers = one pair
}

TEST_CASE("built-in linear scorer is antisymmetric to machine precision") {
    PairwiseScorer scorer;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> coef(0.0, 2.0);
    for (double& w : scorer.weights) w = coef(rng);
    auto pairs = random_pairs(50, 99);
    PairScoreFn fn = [&](const std::string& c, const std::string& a, const std::string& b) {
        return scorer.score(c, a, b);
    };
    CHECK(swap_consistency_loss(fn, pairs) <= 1e-12);
}

TEST_CASE("swap loss exposes a symmetric scorer exactly") {
    // f(a,b) = 1 everywhere: gap = f(a,b) + f(b,a) = 2, loss = 4
    PairScoreFn constant = [](const std::string&, const std::string&, const std::string&) {
        return 1.0;
    };
    auto pairs = random_pairs(10, 7);
    CHECK(swap_consistency_loss(constant, pairs) == doctest::Approx(4.0));
    CHECK_THROWS_AS(swap_consistency_loss(constant, {}), UserError);
}

TEST_CASE("scorer serialization round-trips") {
    PairwiseScorer s;
    s.weights[0] = 1.5;
    s.weights[7] = -2.25;
    PairwiseScorer back = PairwiseScorer::from_json(s.to_json());
    CHECK(back.weights == s.weights);
    CHECK(back.feature_extractor_id == s.feature_extractor_id);
    nlohmann::json bad = s.to_json();
    bad["weights"] = {1.0, 2.0};
    CHECK_THROWS_AS(PairwiseScorer::from_json(bad), SerializationFailure);
}

TEST_CASE("caching judge computes each ordered pair once") {
    int calls = 0;
    CachingPairJudge judge(
        [&](const std::string&, const std::string& a, const std::string& b) {
            ++calls;
            return static_cast<double>(a.size()) - static_cast<double>(b.size());
        },
        0.5);
    CHECK(judge.judge("c", "longer", "ab").outcome == PairOutcome::a_wins);
    CHECK(judge.judge("c", "longer", "ab").outcome == PairOutcome::a_wins);
    CHECK(calls == 1);
    CHECK(judge.cache_size() == 1);
    // swapped order is a distinct cache entry
    CHECK(judge.judge("c", "ab", "longer").outcome == PairOutcome::b_wins);
    CHECK(calls == 2);
    CHECK(judge.judge("c", "ab", "ac").outcome == PairOutcome::tie);
}

TEST_CASE("binary outcome reward maps win/loss/tie to 1/0/0.5") {
    CachingPairJudge judge(
        [](const std::string&, const std::string& a, const std::string& b) {
            return static_cast<double>(a.size()) - static_cast<double>(b.size());
        },
        0.0);
    CHECK(binary_outcome_reward("long response", "short", "ctx", judge) == 1.0);
    CHECK(binary_outcome_reward("short", "long response", "ctx", judge) == 0.0);
    CHECK(binary_outcome_reward("same!", "equal", "ctx", judge) == 0.5);
}

TEST_CASE("external pair judge speaks the MARGIN protocol") {
    std::string stub = testsup::stub("margin_judge.py").string();
    ExternalPairJudge fixed{{"python3", stub, "fixed", "2.5"}};
    CHECK(fixed("ctx", "a", "b") == doctest::Approx(2.5));

    ExternalPairJudge garbage{{"python3", stub, "garbage"}};
    CHECK_THROWS_AS(garbage("ctx", "a", "b"), ExternalJudgeProtocolError);

    ExternalPairJudge failing{{"python3", stub, "fail"}};
    CHECK_THROWS_AS(failing("ctx", "a", "b"), ExternalJudgeProtocolError);
}

TEST_CASE("prepare_pairs flips losers and drops ties from the logistic rows") {
    auto labeled = separable_set(4);
    labeled.push_back({{"ctx", "same", "same"}, PairOutcome::tie});
    auto prep = detail::prepare_pairs(labeled);
    CHECK(prep.x.size() == 4);  // tie excluded
    CHECK(prep.s.size() == 5);  // swap rows keep every pair
    for (const auto& s : prep.s)
        for (double v : s) CHECK(v == 0.0);  // antisymmetric features
    // winner-minus-loser rows all point the same way for the fence feature
    for (const auto& x : prep.x) CHECK(x[5] > 0.0);
}

TEST_CASE("training separates code from prose") {
    auto labeled = separable_set(18);
    labeled.push_back({{"ctx", "tie a", "tie b"}, PairOutcome::tie});
    TrainConfig cfg;
    TrainResult result = train_pairwise_scorer(labeled, cfg);
    CHECK(result.final_accuracy == doctest::Approx(1.0));
    REQUIRE_FALSE(result.loss_curve.empty());
    CHECK(result.loss_curve.front() == doctest::Approx(std::log(2.0)));  // zero init
    CHECK(result.loss_curve.back() < result.loss_curve.front());
    // deterministic: same data, same config, same weights
    TrainResult again = train_pairwise_scorer(labeled, cfg);
    CHECK(again.scorer.weights == result.scorer.weights);
}

TEST_CASE("absurd learning rates oscillate but stay finite") {
    // logistic gradients are bounded, so the loss bounces instead of
    // blowing up; the divergence guard is a backstop, not a hot path
    TrainConfig cfg;
    cfg.learning_rate = 1e6;
    auto labeled = separable_set(8);
    labeled.push_back({{"ctx", "same", "same"}, PairOutcome::b_wins});  // contradiction
    TrainResult result;
    CHECK_NOTHROW(result = train_pairwise_scorer(labeled, cfg));
    CHECK(std::isfinite(result.loss_curve.back()));
    CHECK(DivergenceDetected(12).what() ==
          std::string("training loss increased 5 consecutive epochs (epoch 12); "
                      "lower the learning rate"));
}

TEST_CASE("degenerate datasets are rejected up front") {
    TrainConfig cfg;
    CHECK_THROWS_AS(train_pairwise_scorer({}, cfg), UserError);
    std::vector<LabeledPair> only_ties = {{{"c", "a", "b"}, PairOutcome::tie}};
    CHECK_THROWS_AS(train_pairwise_scorer(only_ties, cfg), EmptyAfterTieFiltering);
}

}  // TEST_SUITE
