#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cryst/builtins.hpp"
#include "cryst/crystal.hpp"
#include "cryst/errors.hpp"

using namespace cryst;

namespace {

CrystGroup neg_id_over_z2() {
    return make_cryst(2, {{-IntMatrix::identity(2), RatVector(2)}});
}

// square-lattice group with a glide reflection (nonsymmorphic)
CrystGroup p4g() {
    IntMatrix rot{{0, -1}, {1, 0}};
    IntMatrix refl{{0, 1}, {1, 0}};
    return make_cryst(2, {{rot, RatVector(2)}, {refl, {Rat(1, 2), Rat(1, 2)}}});
}

Lattice half_lattice2() {
    RatMatrix b(2, 2);
    b(0, 0) = Rat(1, 2);
    b(1, 1) = Rat(1, 2);
    return Lattice::from_rational_columns(b);
}

void check_cocycle_all_pairs(const CrystGroup& g) {
    const FinMatGroup& G = g.point_group();
    for (std::size_t i = 0; i < G.order(); ++i)
        for (std::size_t j = 0; j < G.order(); ++j) {
            std::size_t k = G.index_of(G.elements()[i] * G.elements()[j]);
            RatVector expect =
                mod_one(g.translations()[i] + G.elements()[i] * g.translations()[j]);
            CHECK(expect == g.translations()[k]);
        }
}

}  // namespace

TEST_CASE("make_cryst on the builtin generator sets") {
    CrystGroup g1 = gamma1();
    CHECK(g1.dim() == 2);
    CHECK(g1.point_group().order() == 12);
    for (const RatVector& t : g1.translations())
        CHECK(t == RatVector(2));

    CrystGroup g2 = gamma2();
    CHECK(g2.dim() == 3);
    CHECK(g2.point_group().order() == 48);
    check_cocycle_all_pairs(g1);
}

TEST_CASE("make_cryst accepts an order-2 glide and rejects inconsistency") {
    CrystGroup g = make_cryst(2, {{-IntMatrix::identity(2), {Rat(1, 2), Rat(0)}}});
    CHECK(g.point_group().order() == 2);
    CHECK(g.translation_of(-IntMatrix::identity(2)) == RatVector{Rat(1, 2), Rat(0)});
    check_cocycle_all_pairs(g);

    // a pure translation by a non-integral vector contradicts lattice Z^n
    CHECK_THROWS_AS(make_cryst(2, {{IntMatrix::identity(2), {Rat(1, 2), Rat(0)}}}),
                    InconsistentVectorSystem);
    // reflection with an inconsistent glide: s^2 = I forces t + s*t integral
    CHECK_THROWS_AS(make_cryst(2, {{IntMatrix{{0, 1}, {1, 0}}, {Rat(1, 2), Rat(0)}}}),
                    InconsistentVectorSystem);
}

TEST_CASE("make_cryst validates linear parts") {
    CHECK_THROWS_AS(make_cryst(2, {{IntMatrix{{2, 0}, {0, 1}}, RatVector(2)}}),
                    std::invalid_argument);
}

TEST_CASE("make_cryst propagates the closure cap") {
    CHECK_THROWS_AS(make_cryst(2, {{IntMatrix{{1, 1}, {0, 1}}, RatVector(2)}}, 100),
                    OrderCapExceeded);
}

TEST_CASE("affine normalizer refuses an infinite normalizer result") {
    NormalizerResult infinite;
    infinite.group = gamma1().point_group();
    infinite.status = NormalizerStatus::infinite_or_cap_exceeded;
    CHECK_THROWS_AS(affine_normalizer(gamma1(), infinite), NormalizerNotFinite);
}

TEST_CASE("cocycle condition holds for the nonsymmorphic example") {
    check_cocycle_all_pairs(p4g());
}

TEST_CASE("center_trivial") {
    CHECK(center_trivial(gamma1()));
    CHECK(center_trivial(gamma2()));
    CHECK(center_trivial(neg_id_over_z2()));
    CHECK(center_trivial(p4g()));
    CrystGroup free_abelian = make_cryst(2, {});
    CHECK_FALSE(center_trivial(free_abelian));
    // a reflection alone fixes a line
    CrystGroup refl = make_cryst(2, {{IntMatrix{{0, 1}, {1, 0}}, RatVector(2)}});
    CHECK_FALSE(center_trivial(refl));
}

TEST_CASE("a0 lattice") {
    CHECK(a0_lattice(gamma1()).is_standard());
    CHECK(a0_lattice(gamma2()).is_standard());
    CHECK(a0_lattice(neg_id_over_z2()) == half_lattice2());
    CHECK_THROWS_AS(a0_lattice(make_cryst(2, {})), NotCenterless);
}

TEST_CASE("h1 invariants") {
    CHECK(h1_invariants(gamma1()).empty());
    CHECK(h1_invariants(gamma2()).empty());
    CHECK(h1_invariants(neg_id_over_z2()) == std::vector<Int>{Int(2), Int(2)});
    CHECK(h1_invariants(p4g()) == std::vector<Int>{Int(2)});
}

TEST_CASE("h1 brute-force cross-check for the inversion group") {
    CrystGroup g = neg_id_over_z2();
    // stacked (g - I) = -2*I, nonzero SNF divisors (2,2), product 4:
    // enumerate m in (1/4)Z^2 / Z^2 and keep the points with (g-I)m integral
    std::vector<RatVector> fixed;
    for (long a = 0; a < 4; ++a)
        for (long b = 0; b < 4; ++b) {
            RatVector m{Rat(a, 4), Rat(b, 4)};
            RatVector image = (-IntMatrix::identity(2) - IntMatrix::identity(2)) * m;
            if (is_integral(image)) fixed.push_back(m);
        }
    REQUIRE(fixed.size() == 4);  // index of a0 over Z^2
    // every nonzero element has order 2, so the group is (Z/2)^2
    for (const RatVector& m : fixed) {
        RatVector doubled{m[0] * 2, m[1] * 2};
        CHECK(is_integral(doubled));
    }
    CHECK(h1_invariants(g) == std::vector<Int>{Int(2), Int(2)});
}

TEST_CASE("affine normalizer fixes the builtin groups") {
    for (const CrystGroup& g : {gamma1(), gamma2()}) {
        NormalizerResult N = normalizer(g.point_group());
        AffNormalizerResult aff = affine_normalizer(g, N);
        CHECK(aff.n_alpha == g.point_group());
        CHECK(aff.a0.is_standard());
        CHECK(aff.group == g);
    }
}

TEST_CASE("membership congruences: the group sits inside its affine normalizer") {
    CrystGroup g = p4g();
    const FinMatGroup& G = g.point_group();
    for (const auto& [x, tx] : g.affine_generators()) {
        IntMatrix xinv = x.inverse_unimodular();
        const auto gens = g.affine_generators();
        IntMatrix A(gens.size() * 2, 2);
        RatVector b(gens.size() * 2);
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const auto& [h, th] = gens[k];
            IntMatrix hp = x * h * xinv;
            RatVector rhs = g.translation_of(hp) - x * th;
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) A(k * 2 + i, j) = (i == j ? 1 : 0) - hp(i, j);
                b[k * 2 + i] = rhs[i];
            }
        }
        CongruenceSolution sol = solve_congruence(A, b);
        REQUIRE(sol.solvable);
        // the element's own translation solves its membership system
        CHECK(is_integral(A * tx - b));
    }
    // identity linear part: homogeneous system, solution set is exactly a0
    IntMatrix A(G.generators().size() * 2, 2);
    for (std::size_t k = 0; k < G.generators().size(); ++k)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                A(k * 2 + i, j) = (i == j ? 1 : 0) - G.generators()[k](i, j);
    CongruenceSolution sol = solve_congruence(A, RatVector(A.rows()));
    REQUIRE(sol.solvable);
    REQUIRE(sol.solution_lattice.has_value());
    CHECK(*sol.solution_lattice == a0_lattice(g));
}

TEST_CASE("affine normalizer of the squared group gains the block swap") {
    CrystGroup prod = direct_product(gamma1(), gamma1());
    NormalizerResult N = normalizer(prod.point_group());
    AffNormalizerResult aff = affine_normalizer(prod, N);
    CHECK(aff.n_alpha.order() == 2 * prod.point_group().order());
    CHECK(aff.a0.is_standard());
    // N_alpha is a subgroup of N containing the point group
    for (const IntMatrix& g : prod.point_group().elements()) CHECK(aff.n_alpha.contains(g));
    for (const IntMatrix& x : aff.n_alpha.elements()) CHECK(N.group.contains(x));
}

TEST_CASE("rebase") {
    SECTION("identity lattice is a no-op") {
        CrystGroup g = p4g();
        CrystGroup r = rebase(g.point_group(), g.translations(), Lattice::standard(2));
        CHECK(r == g);
    }
    SECTION("scalar point group is unchanged by scaling") {
        CrystGroup g = neg_id_over_z2();
        CrystGroup r = rebase(g.point_group(), g.translations(), half_lattice2());
        CHECK(r.point_group() == g.point_group());
    }
    SECTION("non-invariant lattice is rejected") {
        CrystGroup g = gamma1();
        RatMatrix b(2, 2);
        b(0, 0) = Rat(1, 2);
        b(1, 1) = Rat(1);
        CHECK_THROWS_AS(rebase(g.point_group(), g.translations(),
                               Lattice::from_rational_columns(b)),
                        NonIntegralRebase);
    }
}

TEST_CASE("out order on the paper examples and products") {
    NormalizerConfig cfg;
    CrystGroup g1 = gamma1();
    CHECK(out_order(g1, normalizer(g1.point_group(), cfg)) == 1);

    CrystGroup mix = direct_product(gamma1(), gamma2());
    CHECK(mix.dim() == 5);
    CHECK(mix.point_group().order() == 576);
    CHECK(out_order(mix, normalizer(mix.point_group(), cfg)) == 1);

    CrystGroup sq = direct_product(gamma1(), gamma1());
    CHECK(sq.dim() == 4);
    CHECK(sq.point_group().order() == 144);
    CHECK(out_order(sq, normalizer(sq.point_group(), cfg)) == 2);
}

TEST_CASE("direct product basics") {
    CrystGroup g1 = gamma1();
    CrystGroup trivial0 = CrystGroup::from_data(FinMatGroup::trivial(0), {RatVector{}});
    CHECK(direct_product(g1, trivial0) == g1);
    CHECK(direct_product(trivial0, g1) == g1);
    CrystGroup sq = direct_product(g1, g1);
    check_cocycle_all_pairs(sq);
}

TEST_CASE("analysis pipeline and report") {
    AnalysisOutcome out = analyze(gamma1());
    CHECK(out.report.dim == 2);
    CHECK(out.report.point_group_order == 12);
    CHECK(out.report.center_trivial);
    CHECK(out.report.h1_invariants.empty());
    CHECK(out.report.normalizer_order == 12);
    CHECK(out.report.normalizer_status == NormalizerStatus::certified);
    CHECK(out.report.n_alpha_order == 12);
    CHECK(out.report.out_order == 1);
    CHECK(out.report.out_trivial);

    CHECK_THROWS_AS(analyze(make_cryst(2, {})), NotCenterless);
    CHECK_THROWS_AS(analyze(neg_id_over_z2()), CentralPointGroup);
}

TEST_CASE("exact-sequence arithmetic on p4g") {
    AnalysisOutcome out = analyze(p4g());
    CHECK(out.report.point_group_order == 8);
    CHECK(out.report.h1_invariants == std::vector<Int>{Int(2)});
    CHECK(out.report.normalizer_order == 8);
    CHECK(out.report.n_alpha_order == 8);
    CHECK(out.report.out_order == 2);
    // |Out| * |G| = |H1| * |N_alpha|
    CHECK(out.report.out_order * out.report.point_group_order ==
          Int(2) * out.report.n_alpha_order);
}

TEST_CASE("fixed-point iteration on the builtins") {
    IterationResult r1 = iterate_fixpoint(gamma1());
    CHECK(r1.steps == 0);
    CHECK(r1.group == gamma1());
    CHECK(r1.history.size() == 1);

    IterationResult mix = iterate_fixpoint(direct_product(gamma1(), gamma2()));
    CHECK(mix.steps == 0);

    IterationResult sq = iterate_fixpoint(direct_product(gamma1(), gamma1()));
    CHECK(sq.steps >= 1);
    CHECK(sq.history.back().out_order == 1);
    CHECK(sq.history.back().center_trivial);
    // literal fixpoint certificate
    AnalysisOutcome fin = analyze(sq.group);
    CHECK(fin.affine.n_alpha == sq.group.point_group());
    CHECK(fin.affine.a0.is_standard());
}

TEST_CASE("iteration without the H1 = 0 hypothesis need not stabilize") {
    // the glide group keeps H1 = Z/2 at every level, so the sequence of
    // affine normalizers grows forever; the budget must trip
    CHECK_THROWS_AS(iterate_fixpoint(p4g(), 3), MaxIterExceeded);
    try {
        iterate_fixpoint(p4g(), 3);
    } catch (const MaxIterExceeded& e) {
        REQUIRE(e.history.size() == 4);
        for (const AnalysisReport& r : e.history) {
            CHECK(r.out_order * r.point_group_order == Int(2) * r.n_alpha_order);
            CHECK(r.center_trivial);
        }
    }
}

TEST_CASE("construction for dimensions 2..5") {
    IterationResult r2 = construct_complete(2);
    CHECK(r2.group == gamma1());
    IterationResult r3 = construct_complete(3);
    CHECK(r3.group == gamma2());
    IterationResult r4 = construct_complete(4);
    CHECK(r4.group.dim() == 4);
    CHECK(r4.history.back().out_order == 1);
    CHECK(center_trivial(r4.group));
    IterationResult r5 = construct_complete(5);
    CHECK(r5.group.dim() == 5);
    CHECK(r5.steps == 0);
    CHECK(r5.history.back().out_order == 1);
    CHECK_THROWS_AS(construct_complete(1), std::invalid_argument);
}

TEST_CASE("aut_crystallographic_check") {
    for (const CrystGroup& g :
         {gamma1(), gamma2(), p4g(), direct_product(gamma1(), gamma1())}) {
        NormalizerResult N = normalizer(g.point_group());
        CHECK(aut_crystallographic_check(g, N));
    }
}

TEST_CASE("exact-sequence arithmetic over random centerless subgroups") {
    std::mt19937 rng(20240908);
    CrystGroup g1 = gamma1();
    CrystGroup g2 = gamma2();
    int successes = 0;
    for (int iter = 0; iter < 200 && successes < 12; ++iter) {
        const CrystGroup& base = (iter % 3 == 0) ? g2 : g1;
        const auto& elems = base.point_group().elements();
        std::vector<AffineGen> gens;
        std::size_t count = 1 + rng() % 2;
        for (std::size_t k = 0; k < count; ++k) {
            RatVector t(base.dim());
            for (auto& q : t) q = Rat(static_cast<long>(rng() % 7) - 3);  // integral
            gens.emplace_back(elems[rng() % elems.size()], t);
        }
        try {
            CrystGroup h = make_cryst(base.dim(), gens);
            if (!center_trivial(h)) continue;
            AnalysisOutcome out = analyze(h);
            Int h1 = 1;
            for (const Int& d : out.report.h1_invariants) h1 *= d;
            CHECK(out.report.out_order * out.report.point_group_order ==
                  h1 * out.report.n_alpha_order);
            ++successes;
        } catch (const CentralPointGroup&) {
        } catch (const NormalizerNotFinite&) {
        }
    }
    CHECK(successes >= 12);
}
