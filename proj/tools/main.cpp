// Command-line front end. Every verdict is a plain library call; the tool
// only parses documents, formats reports, and maps results onto exit codes:
// 0 affirmative, 1 negative verdict, 2 malformed input.

#include "CLI11.hpp"

#include "prevar/json_io.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace prevar;

namespace {

struct Options {
    std::string format = "text";
    bool strict_labels = true;
    int m = 0;
    std::string out_dir = "data";
    std::string system_path;
    std::string data_path;
};

// thrown after a verdict has already been printed
struct ExitWith {
    int code;
};

Json load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return Json::parse(in);
}

void emit(const Options& o, const Json& doc, const std::string& text) {
    if (o.format == "json")
        std::cout << dump_document(doc);
    else
        std::cout << text;
}

std::string vec_text(const QVec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_rational(v[i]);
    return out + ")";
}

std::string ivec_text(const IntVec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
    return out + ")";
}

std::string filtration_text(const Filtration& f) {
    std::string out;
    for (const auto& [level, space] : f.jumps) {
        if (!out.empty()) out += "; ";
        out += "s=" + std::to_string(level) + ": ";
        if (space.dim() == f.rank) {
            out += "full";
        } else {
            for (std::size_t i = 0; i < space.rows.size(); ++i)
                out += (i ? " " : "") + vec_text(space.rows[i]);
        }
    }
    return out;
}

std::string bundle_text(const SystemContext& ctx, const BundleData& b) {
    std::string out;
    for (const auto& [rc, f] : b.filtrations)
        out += ctx.omega.classes[static_cast<std::size_t>(rc)].id + "  " + filtration_text(f) + "\n";
    return out;
}

void report_invalid_system(const Options& o, const ValidationReport& rep) {
    std::string text = "invalid system\n";
    for (const auto& v : rep.violations) text += "  " + v.axiom + ": " + v.detail + "\n";
    emit(o, report_to_json(rep), text);
}

SystemOfFans load_system(const Options& o) {
    try {
        return system_from_json(load_document(o.system_path));
    } catch (const NotAFan& e) {
        ValidationReport rep;
        rep.add("fan", e.what());
        report_invalid_system(o, rep);
        throw ExitWith{1};
    }
}

SystemContext require_valid(const Options& o) {
    SystemOfFans sys = load_system(o);
    ValidationReport rep = validate_system(sys);
    if (!rep.valid) {
        report_invalid_system(o, rep);
        throw ExitWith{1};
    }
    return make_context(std::move(sys));
}

int run_validate(const Options& o) {
    SystemOfFans sys = load_system(o);
    ValidationReport rep = validate_system(sys);
    if (!rep.valid) {
        report_invalid_system(o, rep);
        return 1;
    }
    OmegaPoset omega = omega_classes(sys);
    std::size_t nlambda = lambda_rays(omega).size();
    bool affine = is_affine_system(sys);
    std::string text = std::string("valid ") + (affine ? "affine " : "") + "system; |Ω| = " +
                       std::to_string(omega.classes.size()) + "; |Λ| = " +
                       std::to_string(nlambda) + "\n";
    emit(o,
         Json{{"valid", true},
              {"affine", affine},
              {"omega", omega.classes.size()},
              {"lambda", nlambda},
              {"violations", Json::array()}},
         text);
    return 0;
}

int run_omega(const Options& o) {
    SystemContext ctx = require_valid(o);
    Json classes = Json::array();
    std::string text = "|Ω| = " + std::to_string(ctx.omega.classes.size()) + "\n";
    for (const auto& cls : ctx.omega.classes) {
        Json rays = Json::array();
        std::string names;
        for (const auto& r : cls.cone.rays) rays.push_back(lattice_vector_to_json(r));
        Json labels = Json::array();
        for (int l : cls.labels) {
            labels.push_back(ctx.omega.labels[static_cast<std::size_t>(l)]);
            names += (names.empty() ? "" : ",") + ctx.omega.labels[static_cast<std::size_t>(l)];
        }
        classes.push_back(Json{{"id", cls.id},
                               {"dim", cls.cone.dim},
                               {"labels", std::move(labels)},
                               {"rays", std::move(rays)}});
        text += cls.id + "  dim=" + std::to_string(cls.cone.dim) + "  labels=" + names + "\n";
    }
    emit(o, Json{{"omega", ctx.omega.classes.size()}, {"classes", std::move(classes)}}, text);
    return 0;
}

int run_lambda(const Options& o) {
    SystemContext ctx = require_valid(o);
    Json ids = Json::array();
    std::string text = "|Λ| = " + std::to_string(ctx.lambda.size()) + "\n";
    for (int rc : ctx.lambda) {
        const std::string& id = ctx.omega.classes[static_cast<std::size_t>(rc)].id;
        ids.push_back(id);
        text += id + "\n";
    }
    emit(o, Json{{"lambda", ctx.lambda.size()}, {"classes", std::move(ids)}}, text);
    return 0;
}

int run_orbits(const Options& o) {
    SystemContext ctx = require_valid(o);
    Json orbits = Json::array();
    std::string text;
    for (std::size_t a = 0; a < ctx.omega.classes.size(); ++a) {
        const OmegaClass& cls = ctx.omega.classes[a];
        int orbit_dim = ctx.sys.ambient - cls.cone.dim;
        Json closure = Json::array();
        std::string closure_text;
        for (std::size_t c = 0; c < ctx.omega.classes.size(); ++c)
            if (omega_leq(ctx.omega, static_cast<int>(a), static_cast<int>(c))) {
                closure.push_back(ctx.omega.classes[c].id);
                closure_text += (closure_text.empty() ? "" : ", ") + ctx.omega.classes[c].id;
            }
        orbits.push_back(Json{{"id", cls.id}, {"orbit_dim", orbit_dim}, {"closure", std::move(closure)}});
        text += cls.id + "  orbit dim " + std::to_string(orbit_dim) + "  closure: " + closure_text + "\n";
    }
    emit(o, Json{{"orbits", std::move(orbits)}}, text);
    return 0;
}

int run_tangent(const Options& o) {
    SystemContext ctx = require_valid(o);
    try {
        BundleData tb = tangent_bundle(ctx);
        emit(o, bundle_to_json(ctx, tb), bundle_text(ctx, tb));
        return 0;
    } catch (const NotSmooth& e) {
        emit(o, Json{{"ok", false}, {"kind", "NotSmooth"}, {"detail", e.what()}},
             std::string(e.what()) + "\n");
        return 1;
    }
}

int run_check_bundle(const Options& o) {
    SystemContext ctx = require_valid(o);
    BundleData b = bundle_from_json(ctx, load_document(o.data_path));
    CompatibilityReport rep = is_locally_free(ctx, b);
    Json cones = Json::array();
    std::string text = rep.locally_free
                           ? "locally free; " + std::to_string(rep.cones.size()) +
                                 " maximal cone classes\n"
                           : "not locally free\n";
    for (const auto& verdict : rep.cones) {
        const std::string& id = ctx.omega.classes[static_cast<std::size_t>(verdict.cone_class)].id;
        Json cone{{"id", id}, {"compatible", verdict.compatible}};
        if (verdict.compatible) {
            Json comps = Json::array();
            std::string line;
            for (const auto& comp : verdict.decomposition->components) {
                Json basis = Json::array();
                for (const auto& row : comp.space.rows) basis.push_back(rational_vector_to_json(row));
                comps.push_back(Json{{"weight", lattice_vector_to_json(comp.weight)},
                                     {"basis", std::move(basis)}});
                line += (line.empty() ? "" : "; ") + std::string("w=") + ivec_text(comp.weight) +
                        " dim " + std::to_string(comp.space.dim());
            }
            cone["components"] = std::move(comps);
            text += "  " + id + ": " + line + "\n";
        } else {
            text += "  " + id + ": incompatible\n";
        }
        cones.push_back(std::move(cone));
    }
    emit(o, Json{{"locally_free", rep.locally_free}, {"cones", std::move(cones)}}, text);
    return rep.locally_free ? 0 : 1;
}

int run_split(const Options& o) {
    SystemContext ctx = require_valid(o);
    BundleData b = bundle_from_json(ctx, load_document(o.data_path));
    try {
        std::optional<AdaptedBasis> basis = splits_equivariantly(ctx, b);
        if (!basis) {
            emit(o, Json{{"splits", false}}, "does not split equivariantly\n");
            return 1;
        }
        Json vectors = Json::array(), levels = Json::array();
        std::string text = "splits equivariantly\n";
        for (std::size_t i = 0; i < basis->vectors.size(); ++i) {
            vectors.push_back(rational_vector_to_json(basis->vectors[i]));
            Json lv = Json::array();
            std::string lt;
            for (long long l : basis->labels[i]) {
                lv.push_back(l);
                lt += (lt.empty() ? "" : ",") + std::to_string(l);
            }
            levels.push_back(std::move(lv));
            text += "  " + vec_text(basis->vectors[i]) + "  levels " + lt + "\n";
        }
        emit(o, Json{{"splits", true}, {"basis", std::move(vectors)}, {"levels", std::move(levels)}},
             text);
        return 0;
    } catch (const NotSmooth& e) {
        emit(o, Json{{"ok", false}, {"kind", "NotSmooth"}, {"detail", e.what()}},
             std::string(e.what()) + "\n");
        return 1;
    }
}

int run_rank_split(const Options& o) {
    SystemContext ctx = require_valid(o);
    try {
        RankSplitResult res = rank_split_structural(ctx, o.m, o.strict_labels);
        if (res.splits) {
            emit(o, Json{{"splits", true}, {"m", o.m}},
                 "every rank-" + std::to_string(o.m) + " bundle splits\n");
            return 0;
        }
        Json witness = Json::array();
        std::string ids;
        for (int c : res.witness) {
            const std::string& id = ctx.omega.classes[static_cast<std::size_t>(c)].id;
            witness.push_back(id);
            ids += (ids.empty() ? "" : ", ") + id;
        }
        emit(o, Json{{"splits", false}, {"m", o.m}, {"witness", std::move(witness)}},
             "rank-" + std::to_string(o.m) + " splitting fails; witness: " + ids + "\n");
        return 1;
    } catch (const NotSmooth& e) {
        emit(o, Json{{"ok", false}, {"kind", "NotSmooth"}, {"detail", e.what()}},
             std::string(e.what()) + "\n");
        return 1;
    }
}

int run_plmap(const Options& o) {
    SystemContext ctx = require_valid(o);
    BundleData b = bundle_from_json(ctx, load_document(o.data_path));
    try {
        PLMap pl = plmap_from_bundle(ctx, b);
        std::string text;
        for (const auto& [c, piece] : pl.pieces) {
            text += ctx.omega.classes[static_cast<std::size_t>(c)].id + "\n";
            for (std::size_t i = 0; i < piece.basis.size(); ++i)
                text += "  " + vec_text(piece.basis[i]) + "  m=" + ivec_text(piece.weights[i]) + "\n";
        }
        emit(o, plmap_to_json(ctx, pl), text);
        return 0;
    } catch (const NotLocallyFree& e) {
        emit(o, Json{{"ok", false}, {"kind", "NotLocallyFree"}, {"detail", e.what()}},
             std::string(e.what()) + "\n");
        return 1;
    }
}

int run_from_plmap(const Options& o) {
    SystemContext ctx = require_valid(o);
    PLMap pl = plmap_from_json(ctx, load_document(o.data_path));
    try {
        BundleData b = bundle_from_plmap(ctx, pl);
        emit(o, bundle_to_json(ctx, b), bundle_text(ctx, b));
        return 0;
    } catch (const InvalidPLMap& e) {
        emit(o, Json{{"ok", false}, {"kind", "InvalidPLMap"}, {"detail", e.what()}},
             std::string(e.what()) + "\n");
        return 1;
    }
}

int run_examples(const Options& o) {
    std::vector<std::string> files = emit_examples(o.out_dir);
    Json written = Json::array();
    std::string text;
    for (const auto& f : files) {
        written.push_back(f);
        text += "wrote " + f + "\n";
    }
    emit(o, Json{{"written", std::move(written)}}, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorics of equivariant sheaves on toric prevarieties"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&o](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "report format")
            ->check(CLI::IsMember({"text", "json"}));
    };
    auto add_system = [&o, &add_format](CLI::App* cmd) {
        cmd->add_option("system", o.system_path, "system document")->required();
        add_format(cmd);
    };
    auto add_pair = [&o, &add_system](CLI::App* cmd, const std::string& name,
                                      const std::string& desc) {
        add_system(cmd);
        cmd->add_option(name, o.data_path, desc)->required();
    };

    add_system(app.add_subcommand("validate", "check the system axioms, count Ω and Λ"));
    add_system(app.add_subcommand("omega", "list the glued cone classes"));
    add_system(app.add_subcommand("lambda", "list the ray classes"));
    add_system(app.add_subcommand("orbits", "orbit dimensions and closure order"));
    add_system(app.add_subcommand("tangent", "tangent bundle filtrations"));
    add_pair(app.add_subcommand("check-bundle", "decide local freeness with weights"), "bundle",
             "bundle document");
    add_pair(app.add_subcommand("split", "decide equivariant splitting"), "bundle",
             "bundle document");
    CLI::App* rank_split = app.add_subcommand("rank-split", "structural low-rank split criterion");
    add_system(rank_split);
    rank_split->add_option("--m", o.m, "bundle rank")->required();
    rank_split->add_option("--strict-labels", o.strict_labels,
                           "require the realizing chart to carry every class label");
    add_pair(app.add_subcommand("plmap", "piecewise-linear map of a locally free bundle"), "bundle",
             "bundle document");
    add_pair(app.add_subcommand("from-plmap", "bundle of a piecewise-linear map"), "plmap",
             "plmap document");
    CLI::App* examples = app.add_subcommand("examples", "write the example corpus");
    examples->add_option("--out", o.out_dir, "target directory");
    add_format(examples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("validate")) return run_validate(o);
        if (app.got_subcommand("omega")) return run_omega(o);
        if (app.got_subcommand("lambda")) return run_lambda(o);
        if (app.got_subcommand("orbits")) return run_orbits(o);
        if (app.got_subcommand("tangent")) return run_tangent(o);
        if (app.got_subcommand("check-bundle")) return run_check_bundle(o);
        if (app.got_subcommand("split")) return run_split(o);
        if (app.got_subcommand("rank-split")) {
            if (o.m < 2) {
                std::cerr << "error: --m must be at least 2\n";
                return 2;
            }
            return run_rank_split(o);
        }
        if (app.got_subcommand("plmap")) return run_plmap(o);
        if (app.got_subcommand("from-plmap")) return run_from_plmap(o);
        if (app.got_subcommand("examples")) return run_examples(o);
        return 2;
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
