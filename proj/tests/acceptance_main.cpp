// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its expected values from scratch rather
// than trusting intermediate library state.

#include "prevar/json_io.hpp"

#include "oracle.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace prevar;
using testsupport::Rng;

namespace {

int failures = 0;

void run(int number, const std::string& summary, double budget_ms,
         const std::function<bool(std::string&)>& body) {
    std::string why;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(why);
    } catch (const std::exception& e) {
        why = std::string("unexpected exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
    if (ok && ms > budget_ms) {
        ok = false;
        why = "over time budget";
    }
    std::cout << "criterion " << std::setw(2) << number << ": " << (ok ? "PASS" : "FAIL") << "  "
              << summary << "  [" << std::fixed << std::setprecision(1) << ms << " ms]";
    if (!ok && !why.empty()) std::cout << "  (" << why << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

bool tangent_is_ray_span_table(const SystemContext& ctx, const BundleData& tb, std::string& why) {
    for (int rc : ctx.lambda) {
        const OmegaClass& cls = ctx.omega.classes[static_cast<std::size_t>(rc)];
        const Filtration& f = tb.filtrations.at(rc);
        std::vector<std::pair<long long, Subspace>> expected = {
            {-1, subspace_span_int(ctx.sys.ambient, {cls.cone.rays.front()})},
            {0, subspace_full(ctx.sys.ambient)}};
        if (!(f.jumps == expected)) {
            why = "tangent filtration at " + cls.id + " is not {v_rho at -1, full at 0}";
            return false;
        }
    }
    return true;
}

std::optional<Filtration> rebuild_from_prevaluation(int rank, const Prevaluation& p) {
    auto found = oracle::find_adapted(rank, {p.backing});
    if (!found) return std::nullopt;
    std::vector<std::pair<long long, QVec>> entries;
    for (const auto& a : *found) {
        auto v = prevaluation_eval(p, a.vec);
        if (!v || -*v != a.tuple[0]) return std::nullopt;
        entries.emplace_back(-*v, a.vec);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<long long, Subspace>> jumps;
    QMatrix gens;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        gens.push_back(entries[i].second);
        if (i + 1 < entries.size() && entries[i + 1].first == entries[i].first) continue;
        jumps.emplace_back(entries[i].first, subspace_span(rank, gens));
    }
    return make_filtration(rank, std::move(jumps));
}

}  // namespace

int main() {
    run(1, "double origin: affine, |Omega| = 3, |Lambda| = 2, tangent table", 1000,
        [](std::string& why) {
            SystemOfFans sys = double_origin_system();
            if (!validate_system(sys).valid || !is_affine_system(sys)) {
                why = "system does not validate as affine";
                return false;
            }
            SystemContext ctx = make_context(sys);
            if (ctx.omega.classes.size() != 3 || ctx.lambda.size() != 2) {
                why = "wrong class counts";
                return false;
            }
            BundleData tb = tangent_bundle(ctx);
            for (int rc : ctx.lambda) {
                const Filtration& f = tb.filtrations.at(rc);
                bool table = filtration_at(f, -2).dim() == 0 && filtration_at(f, -1).dim() == 1 &&
                             f.jumps.size() == 1 && f.jumps.front().first == -1;
                if (!table) {
                    why = "tangent filtration is not {0 below -2, full from -1}";
                    return false;
                }
            }
            return true;
        });

    run(2, "fig 1 system: smooth affine, 4 ray classes, tangent lines, no splitting", 1000,
        [](std::string& why) {
            SystemOfFans sys = fig1_system();
            if (!validate_system(sys).valid || !is_affine_system(sys) || !is_smooth_system(sys)) {
                why = "system does not validate as smooth affine";
                return false;
            }
            SystemContext ctx = make_context(sys);
            if (ctx.lambda.size() != 4) {
                why = "wrong |Lambda|";
                return false;
            }
            BundleData tb = tangent_bundle(ctx);
            if (!tangent_is_ray_span_table(ctx, tb, why)) return false;
            std::vector<Subspace> lines;
            for (int rc : ctx.lambda)
                lines.push_back(tb.filtrations.at(rc).jumps.front().second);
            std::vector<Subspace> displayed = {
                subspace_span_int(2, {testsupport::iv({0, 1})}),
                subspace_span_int(2, {testsupport::iv({1, -1})}),
                subspace_span_int(2, {testsupport::iv({1, 0})}),
                subspace_span_int(2, {testsupport::iv({-1, -1})})};
            for (const auto& want : displayed)
                if (std::count(lines.begin(), lines.end(), want) != 1) {
                    why = "displayed jump lines not reproduced";
                    return false;
                }
            CompatibilityReport rep = is_locally_free(ctx, tb);
            if (!rep.locally_free || rep.cones.size() != 2) {
                why = "tangent bundle not compatible on both maximal cones";
                return false;
            }
            if (splits_equivariantly(ctx, tb)) {
                why = "tangent bundle unexpectedly splits";
                return false;
            }
            return true;
        });

    run(3, "fig 2 system: 5+10 fans validate, Lambda representatives, no splitting", 1000,
        [](std::string& why) {
            SystemOfFans sys = fig2_system();
            if (sys.diagonal.size() != 5 || sys.offdiag.size() != 10) {
                why = "fan counts are off";
                return false;
            }
            if (!validate_system(sys).valid || !is_affine_system(sys)) {
                why = "system does not validate as affine";
                return false;
            }
            SystemContext ctx = make_context(sys);
            std::vector<std::string> ids;
            for (int rc : ctx.lambda)
                ids.push_back(ctx.omega.classes[static_cast<std::size_t>(rc)].id);
            if (ids != std::vector<std::string>{"1:1,0", "1:1,1", "2:0,1", "4:-1,-1"}) {
                why = "Lambda representatives differ";
                return false;
            }
            BundleData tb = tangent_bundle(ctx);
            if (!tangent_is_ray_span_table(ctx, tb, why)) return false;
            if (splits_equivariantly(ctx, tb)) {
                why = "tangent bundle unexpectedly splits";
                return false;
            }
            return true;
        });

    run(4, "A3 doubled axes: |Lambda| = 3, rank-2 bundles split, |Omega| = 12", 1000,
        [](std::string& why) {
            SystemOfFans sys = a3_doubled_system();
            if (!validate_system(sys).valid) {
                why = "system does not validate";
                return false;
            }
            SystemContext ctx = make_context(sys);
            if (ctx.lambda.size() != 3) {
                why = "wrong |Lambda|";
                return false;
            }
            if (!rank_split_structural(ctx, 2).splits) {
                why = "rank-2 criterion fails";
                return false;
            }
            if (ctx.omega.classes.size() != 12) {
                why = "|Omega| != 12";
                return false;
            }
            return true;
        });

    run(5, "200 random filtration pairs admit a common adapted basis", 30000,
        [](std::string& why) {
            Rng rng(52001);
            for (int it = 0; it < 200; ++it) {
                int rank = 1 + static_cast<int>(rng() % 5);
                std::vector<Filtration> filts = {oracle::random_filtration(rng, rank, -3, 3),
                                                 oracle::random_filtration(rng, rank, -3, 3)};
                auto basis = adapted_basis(rank, filts);
                if (!basis) {
                    why = "pair without adapted basis at iteration " + std::to_string(it);
                    return false;
                }
                std::vector<oracle::Assigned> assigned;
                for (std::size_t i = 0; i < basis->vectors.size(); ++i)
                    assigned.push_back({basis->labels[i], basis->vectors[i]});
                if (!oracle::verify_adapted(rank, filts, assigned)) {
                    why = "certificate fails verification at iteration " + std::to_string(it);
                    return false;
                }
            }
            return true;
        });

    run(6, "500 instances: grid criterion equals exhaustive backtracking oracle", 60000,
        [](std::string& why) {
            Rng rng(52002);
            int positives = 0, negatives = 0;
            for (int it = 0; it < 500; ++it) {
                int rank = 1 + static_cast<int>(rng() % 4);
                int k = 1 + static_cast<int>(rng() % 3);
                std::vector<Filtration> filts;
                for (int j = 0; j < k; ++j)
                    filts.push_back(oracle::random_filtration(rng, rank, -2, 2));
                bool lib = adapted_basis(rank, filts).has_value();
                bool oracle_says = oracle::find_adapted(rank, filts).has_value();
                if (lib != oracle_says) {
                    why = "verdicts differ at iteration " + std::to_string(it);
                    return false;
                }
                (lib ? positives : negatives)++;
            }
            if (positives == 0 || negatives == 0) {
                why = "degenerate sample";
                return false;
            }
            return true;
        });

    run(7, "round trips: prevaluation (200 filtrations) and PL maps (golden bundles)", 30000,
        [](std::string& why) {
            Rng rng(52003);
            for (int it = 0; it < 200; ++it) {
                int rank = 1 + static_cast<int>(rng() % 5);
                Filtration f = oracle::random_filtration(rng, rank, -3, 3);
                auto back = rebuild_from_prevaluation(rank, Prevaluation{f});
                if (!back || !(*back == f)) {
                    why = "prevaluation round trip failed at iteration " + std::to_string(it);
                    return false;
                }
            }
            for (const SystemOfFans& sys :
                 {double_origin_system(), fig1_system(), fig2_system(), a3_doubled_system()}) {
                SystemContext ctx = make_context(sys);
                BundleData tb = tangent_bundle(ctx);
                if (!(bundle_from_plmap(ctx, plmap_from_bundle(ctx, tb)) == tb)) {
                    why = "PL map round trip failed on a golden tangent bundle";
                    return false;
                }
            }
            return true;
        });

    run(8, "500 subspace pairs satisfy the dimension formula", 10000, [](std::string& why) {
        Rng rng(52004);
        for (int it = 0; it < 500; ++it) {
            int n = 1 + static_cast<int>(rng() % 6);
            Subspace a = testsupport::random_subspace(rng, n, static_cast<int>(rng() % (n + 1)));
            Subspace b = testsupport::random_subspace(rng, n, static_cast<int>(rng() % (n + 1)));
            if (subspace_sum(a, b).dim() + subspace_intersect(a, b).dim() != a.dim() + b.dim()) {
                why = "dimension formula violated at iteration " + std::to_string(it);
                return false;
            }
        }
        return true;
    });

    run(9, "100 smooth cones: leq_sigma implies leq_tau on every face", 10000,
        [](std::string& why) {
            Rng rng(52005);
            int implications = 0;
            for (int it = 0; it < 100; ++it) {
                int n = 2 + static_cast<int>(rng() % 3);
                int d = 1 + static_cast<int>(rng() % n);
                Cone sigma = testsupport::random_smooth_cone(rng, n, d);
                std::vector<IntVec> probes;
                IntVec m = testsupport::random_intvec(rng, n);
                IntVec planted = m;
                for (const auto& r : sigma.rays)
                    for (std::size_t i = 0; i < planted.size(); ++i) planted[i] += r[i];
                probes.push_back(planted);
                probes.push_back(testsupport::random_intvec(rng, n));
                for (const auto& m2 : probes) {
                    if (!leq_sigma(m, m2, sigma)) continue;
                    ++implications;
                    for (const Cone& tau : faces(sigma))
                        if (!leq_sigma(m, m2, tau)) {
                            why = "monotonicity violated at iteration " + std::to_string(it);
                            return false;
                        }
                }
            }
            if (implications < 100) {
                why = "not enough positive premises";
                return false;
            }
            return true;
        });

    run(10, "negative inputs rejected with the documented witnesses", 1000, [](std::string& why) {
        try {
            fan_from_cones(
                2, {cone_from_generators(2, {testsupport::iv({1, 0}), testsupport::iv({1, 2})}),
                    cone_from_generators(2, {testsupport::iv({1, 1}), testsupport::iv({0, 1})})});
            why = "non-fan cone set accepted";
            return false;
        } catch (const NotAFan& e) {
            if (std::string(e.what()).find("intersect in a non-face") == std::string::npos) {
                why = "non-fan witness missing";
                return false;
            }
        }

        Fan ray = fan_from_cones(1, {mk_cone(1, {{1}})});
        SystemOfFans triple = make_system({"1", "2", "3"}, {ray, ray, ray},
                                          {{{0, 1}, ray}, {{1, 2}, ray}});
        ValidationReport rep = validate_system(triple);
        bool witnessed = false;
        for (const auto& v : rep.violations)
            if (v.axiom == "triple" && v.detail.find("1|2") != std::string::npos) witnessed = true;
        if (rep.valid || !witnessed) {
            why = "triple-axiom violation not witnessed";
            return false;
        }

        SystemContext ctx = make_context(a3_doubled_system());
        PLMap pl = plmap_from_bundle(ctx, tangent_bundle(ctx));
        pl.pieces.begin()->second.weights[2] = testsupport::iv({0, 0, 0});
        ValidationReport plrep = validate_plmap(ctx, pl);
        bool shared_ray = false;
        for (const auto& v : plrep.violations)
            if (v.axiom == "face" && v.detail.find("disagree at (1,0,0)") != std::string::npos)
                shared_ray = true;
        if (plrep.valid || !shared_ray) {
            why = "mismatched-weight witness missing";
            return false;
        }
        return true;
    });

    std::cout << (10 - failures) << "/10 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
