#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "shapebag/error.hpp"
#include "shapebag/fusion.hpp"

using namespace shapebag;

namespace {

WordHistogram unit_hist(Modality mo, std::vector<double> v) {
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    const double n = std::sqrt(n2);
    for (double& x : v) x /= n;
    WordHistogram h;
    h.modality = mo;
    h.values = std::move(v);
    h.normalized = true;
    return h;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal;
}

}  // namespace

TEST_CASE("fused distance interpolates linearly between the channels") {
    CHECK(fused_distance(0.2, 0.4, 0.0) == 0.2);
    CHECK(fused_distance(0.2, 0.4, 1.0) == 0.4);
    CHECK(fused_distance(0.2, 0.4, 0.5) == doctest::Approx(0.3));
    CHECK(fused_distance(0.0, 0.0, 0.7) == 0.0);
    CHECK(fused_distance(1.0, 3.0, 0.25) == doctest::Approx(1.5));
}

TEST_CASE("fused distance rejects out-of-range weight and negative distances") {
    CHECK(code_of([] { (void)fused_distance(0.1, 0.1, -0.01); }) == ErrorCode::usage);
    CHECK(code_of([] { (void)fused_distance(0.1, 0.1, 1.01); }) == ErrorCode::usage);
    CHECK(code_of([] { (void)fused_distance(-0.1, 0.1, 0.5); }) == ErrorCode::usage);
    CHECK(code_of([] { (void)fused_distance(0.1, -0.1, 0.5); }) == ErrorCode::usage);
}

TEST_CASE("weight grid spans [0, 1] inclusive") {
    const std::vector<double> g = make_weight_grid(0.05);
    REQUIRE(g.size() == 21);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

    const std::vector<double> q = make_weight_grid(0.25);
    REQUIRE(q.size() == 5);
    CHECK(q[1] == 0.25);
    CHECK(q[3] == 0.75);

    CHECK(make_weight_grid(1.0) == std::vector<double>{0.0, 1.0});
}

TEST_CASE("weight grid rejects steps that do not divide 1") {
    CHECK(code_of([] { (void)make_weight_grid(0.3); }) == ErrorCode::usage);
    CHECK(code_of([] { (void)make_weight_grid(0.0); }) == ErrorCode::usage);
    CHECK(code_of([] { (void)make_weight_grid(-0.1); }) == ErrorCode::usage);
    CHECK(code_of([] { (void)make_weight_grid(1.5); }) == ErrorCode::usage);
}

TEST_CASE("objective names round trip") {
    CHECK(fusion_objective_from_name("rank1") == FusionObjective::rank1);
    CHECK(fusion_objective_from_name("margin") == FusionObjective::margin);
    CHECK(fusion_objective_name(FusionObjective::rank1) == std::string("rank1"));
    CHECK(fusion_objective_name(FusionObjective::margin) == std::string("margin"));
    CHECK(code_of([] { (void)fusion_objective_from_name("best"); }) == ErrorCode::usage);
}

TEST_CASE("learn_weight validates its corpus shape") {
    const SignaturePair p{unit_hist(Modality::texture, {1, 0}),
                          unit_hist(Modality::shape, {1, 0})};
    CHECK(code_of([&] { (void)learn_weight({p}, {{p}}, 0.05); }) == ErrorCode::usage);
    CHECK(code_of([&] { (void)learn_weight({p, p}, {{p}}, 0.05); }) == ErrorCode::usage);
    CHECK(code_of([&] { (void)learn_weight({p, p}, {{p}, {}}, 0.05); }) == ErrorCode::usage);
}

TEST_CASE("ties on the objective resolve toward 0.5") {
    // Queries identical to the gallery are rank-1 hits at every weight,
    // so the whole curve ties and the midpoint wins.
    std::vector<SignaturePair> gallery{
        {unit_hist(Modality::texture, {1, 0, 0}), unit_hist(Modality::shape, {1, 0})},
        {unit_hist(Modality::texture, {0, 1, 0}), unit_hist(Modality::shape, {0, 1})},
    };
    std::vector<std::vector<SignaturePair>> queries{{gallery[0]}, {gallery[1]}};
    const FusionModel m = learn_weight(gallery, queries, 0.05);
    CHECK(m.w == 0.5);
    REQUIRE(m.objective_values.size() == 21);
    for (double v : m.objective_values) CHECK(v == 1.0);
}

TEST_CASE("a misleading shape channel pushes the weight below 0.5") {
    // Object textures overlap (distance sqrt(2 - sqrt 2) ~ 0.765) while the
    // first query's shape histogram matches the wrong object at distance
    // sqrt(2). Rank-1 survives while (1-w)*0.765 >= w*1.414, i.e. w <= ~0.351.
    std::vector<SignaturePair> gallery{
        {unit_hist(Modality::texture, {1, 0, 0}), unit_hist(Modality::shape, {1, 0})},
        {unit_hist(Modality::texture, {1, 1, 0}), unit_hist(Modality::shape, {0, 1})},
    };
    std::vector<std::vector<SignaturePair>> queries{
        {{gallery[0].texture, gallery[1].shape}},  // texture right, shape wrong
        {gallery[1]},                              // both right
    };
    const FusionModel m = learn_weight(gallery, queries, 0.05, FusionObjective::rank1, 3, 0.1, 42);
    CHECK(m.w == doctest::Approx(0.35));
    REQUIRE(m.objective_values.size() == 21);
    for (size_t i = 0; i < m.objective_values.size(); ++i)
        CHECK(m.objective_values[i] == (m.grid[i] < 0.375 ? 1.0 : 0.5));
    CHECK(m.n_warps_per_image == 3);
    CHECK(m.warp_magnitude == 0.1);
    CHECK(m.seed == 42);
}

TEST_CASE("a misleading texture channel pushes the weight above 0.5") {
    std::vector<SignaturePair> gallery{
        {unit_hist(Modality::texture, {1, 0}), unit_hist(Modality::shape, {1, 0, 0})},
        {unit_hist(Modality::texture, {0, 1}), unit_hist(Modality::shape, {1, 1, 0})},
    };
    std::vector<std::vector<SignaturePair>> queries{
        {{gallery[1].texture, gallery[0].shape}},  // shape right, texture wrong
        {gallery[1]},
    };
    const FusionModel m = learn_weight(gallery, queries, 0.05);
    CHECK(m.w == doctest::Approx(0.65));
}

TEST_CASE("the margin objective is linear in w and peaks at an endpoint") {
    // Shape separates the two objects more than texture does, so the mean
    // inter-minus-intra margin grows with w and the argmax is w = 1.
    std::vector<SignaturePair> gallery{
        {unit_hist(Modality::texture, {1, 1, 0}), unit_hist(Modality::shape, {1, 0})},
        {unit_hist(Modality::texture, {1, 0, 0}), unit_hist(Modality::shape, {0, 1})},
    };
    std::vector<std::vector<SignaturePair>> queries{{gallery[0]}, {gallery[1]}};
    const FusionModel m = learn_weight(gallery, queries, 0.25, FusionObjective::margin);
    CHECK(m.objective == FusionObjective::margin);
    CHECK(m.w == 1.0);
    REQUIRE(m.objective_values.size() == 5);
    // linearity: midpoint value equals the average of the endpoints
    CHECK(m.objective_values[2] ==
          doctest::Approx((m.objective_values[0] + m.objective_values[4]) / 2.0));
    // texture-only margin: intra 0, inter = distance between the two textures
    const double dt01 = std::sqrt(2.0 - std::sqrt(2.0));
    CHECK(m.objective_values[0] == doctest::Approx(dt01));
    CHECK(m.objective_values[4] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("fusion model text block round trips exactly") {
    std::vector<SignaturePair> gallery{
        {unit_hist(Modality::texture, {1, 0, 0}), unit_hist(Modality::shape, {1, 0})},
        {unit_hist(Modality::texture, {1, 1, 0}), unit_hist(Modality::shape, {0, 1})},
    };
    std::vector<std::vector<SignaturePair>> queries{
        {{gallery[0].texture, gallery[1].shape}},
        {gallery[1]},
    };
    const FusionModel m = learn_weight(gallery, queries, 0.05, FusionObjective::rank1, 5, 0.08, 7);
    const std::string block = serialize_fusion_model(m);
    const FusionModel back = parse_fusion_model(block);
    CHECK(back == m);
    CHECK(serialize_fusion_model(back) == block);
}

TEST_CASE("malformed fusion blocks are index errors") {
    const std::string good =
        "w = 0.5\ngrid_step = 0.5\nobjective = rank1\n"
        "n_warps_per_image = 0\nwarp_magnitude = 0\nseed = 0\ncurve = 1,1,1\n";
    CHECK_NOTHROW((void)parse_fusion_model(good));
    CHECK(code_of([&] { (void)parse_fusion_model(good + "mystery = 3\n"); }) == ErrorCode::index);
    CHECK(code_of([&] { (void)parse_fusion_model("w = 0.5\nnonsense line\n"); }) ==
          ErrorCode::index);
    CHECK(code_of([] { (void)parse_fusion_model("w = 0.5\ngrid_step = 0.5\n"); }) ==
          ErrorCode::index);  // missing curve
    CHECK(code_of([&] {
              (void)parse_fusion_model("w = abc\ngrid_step = 0.5\ncurve = 1\n");
          }) == ErrorCode::index);
    CHECK(code_of([&] {
              (void)parse_fusion_model(
                  "w = 0.5\ngrid_step = 0.5\nobjective = best\ncurve = 1\n");
          }) == ErrorCode::index);
}
