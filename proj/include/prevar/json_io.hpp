#pragma once

// JSON ingestion and serialization for system, bundle, and piecewise-linear
// map documents, plus regeneration of the bundled example corpus.
//
// Parsing is strict: structural defects raise SchemaError naming the
// offending key. Serialization is deterministic: nlohmann objects keep their
// keys sorted and every array is built in library order, so identical data
// dumps to identical bytes.

#include "prevar/bundle.hpp"
#include "prevar/corpus.hpp"
#include "prevar/system.hpp"
#include "prevar/tits.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace prevar {

using Json = nlohmann::json;

inline std::string format_rational(const Rational& q) {
    std::string out = numerator(q).str();
    if (denominator(q) != 1) out += "/" + denominator(q).str();
    return out;
}

// "p" or "p/q" with integral p, q and q > 0 after normalization.
inline Rational parse_rational(const Json& j, const std::string& where) {
    if (!j.is_string()) throw SchemaError(where + ": rational entries are strings");
    const std::string s = j.get<std::string>();
    std::size_t slash = s.find('/');
    auto digits = [](const std::string& t, bool allow_sign) {
        std::size_t start = allow_sign && t.size() > 1 && t[0] == '-' ? 1 : 0;
        if (start == t.size()) return false;
        for (std::size_t i = start; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false))
        throw SchemaError(where + ": \"" + s + "\" is not a rational p or p/q");
    Int d(den);
    if (d == 0) throw SchemaError(where + ": zero denominator in \"" + s + "\"");
    return Rational(Int(num), d);
}

inline long long parse_integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw SchemaError(where + ": expected an integer");
    return j.get<long long>();
}

inline IntVec parse_lattice_vector(const Json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw SchemaError(where + ": expected a length-" + std::to_string(n) + " integer vector");
    IntVec v;
    for (const auto& x : j) v.emplace_back(parse_integer(x, where));
    return v;
}

inline QVec parse_rational_vector(const Json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw SchemaError(where + ": expected a length-" + std::to_string(n) + " vector");
    QVec v;
    for (const auto& x : j) v.push_back(parse_rational(x, where));
    return v;
}

inline Json lattice_vector_to_json(const IntVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.convert_to<long long>());
    return out;
}

inline Json rational_vector_to_json(const QVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(format_rational(x));
    return out;
}

// ---------------------------------------------------------------------------
// system documents
// { "ambient_rank": n, "index": [labels], "fans": { "i": [cone], "i|j": [cone] } }
// A cone is its ray-generator list (the zero cone is []); an absent pair key
// means the trivial glueing { {0} }.

inline Json fan_to_json(const Fan& f) {
    Json cones = Json::array();
    for (const auto& c : f.cones) {
        Json rays = Json::array();
        for (const auto& r : c.rays) rays.push_back(lattice_vector_to_json(r));
        cones.push_back(std::move(rays));
    }
    return cones;
}

inline Fan fan_from_json(const Json& j, int n, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": a fan is an array of cones");
    std::vector<Cone> cones;
    for (const auto& entry : j) {
        if (!entry.is_array()) throw SchemaError(where + ": a cone is an array of rays");
        std::vector<IntVec> gens;
        for (const auto& r : entry) gens.push_back(parse_lattice_vector(r, n, where));
        try {
            cones.push_back(cone_from_generators(n, gens));
        } catch (const Error& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    return fan_from_cones(n, cones);  // NotAFan propagates: an invalid system, not a schema defect
}

inline Json system_to_json(const SystemOfFans& s) {
    Json fans = Json::object();
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        fans[s.labels[i]] = fan_to_json(s.diagonal[i]);
    for (const auto& [key, f] : s.offdiag) {
        std::string a = s.labels[static_cast<std::size_t>(key.first)];
        std::string b = s.labels[static_cast<std::size_t>(key.second)];
        if (b < a) std::swap(a, b);
        fans[a + "|" + b] = fan_to_json(f);
    }
    return Json{{"ambient_rank", s.ambient}, {"index", s.labels}, {"fans", std::move(fans)}};
}

inline SystemOfFans system_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("system document must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "ambient_rank" && key != "index" && key != "fans")
            throw SchemaError("unknown system key \"" + key + "\"");
    if (!j.contains("ambient_rank") || !j.contains("index"))
        throw SchemaError("system document needs \"ambient_rank\" and \"index\"");

    long long n = parse_integer(j.at("ambient_rank"), "ambient_rank");
    if (n <= 0) throw SchemaError("ambient_rank: must be positive");

    const Json& index = j.at("index");
    if (!index.is_array() || index.empty())
        throw SchemaError("index: expected a nonempty array of labels");
    std::vector<std::string> labels;
    for (const auto& l : index) {
        if (!l.is_string()) throw SchemaError("index: labels are strings");
        std::string s = l.get<std::string>();
        if (s.empty() || s.find('|') != std::string::npos)
            throw SchemaError("index: label \"" + s + "\" must be nonempty and free of '|'");
        labels.push_back(std::move(s));
    }

    std::vector<Fan> diagonal(labels.size(), zero_fan(static_cast<int>(n)));
    std::map<std::pair<int, int>, Fan> offdiag;
    auto lookup = [&labels](const std::string& l, const std::string& key) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return static_cast<int>(i);
        throw SchemaError("fans." + key + ": \"" + l + "\" is not an index label");
    };
    if (j.contains("fans")) {
        if (!j.at("fans").is_object()) throw SchemaError("fans: expected an object");
        for (const auto& [key, value] : j.at("fans").items()) {
            std::size_t bar = key.find('|');
            Fan f = fan_from_json(value, static_cast<int>(n), "fans." + key);
            if (bar == std::string::npos) {
                diagonal[static_cast<std::size_t>(lookup(key, key))] = std::move(f);
            } else {
                std::string a = key.substr(0, bar), b = key.substr(bar + 1);
                if (b.find('|') != std::string::npos || !(a < b))
                    throw SchemaError("fans." + key +
                                      ": pair keys are \"a|b\" with the smaller label first");
                offdiag.emplace(std::minmax(lookup(a, key), lookup(b, key)), std::move(f));
            }
        }
    }
    return make_system(std::move(labels), std::move(diagonal), std::move(offdiag));
}

inline Json report_to_json(const ValidationReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations)
        violations.push_back(Json{{"axiom", v.axiom}, {"detail", v.detail}});
    return Json{{"valid", r.valid}, {"violations", std::move(violations)}};
}

// ---------------------------------------------------------------------------
// bundle documents
// { "rank": r, "filtrations": { "<ray-class-id>": [ {"s": level, "basis": [[rationals]]} ] } }
// Jumps are listed in increasing order and must end at the full space; a
// missing trailing full jump is an input error, never auto-completed.

inline Json bundle_to_json(const SystemContext& ctx, const BundleData& b) {
    Json filts = Json::object();
    for (const auto& [rc, f] : b.filtrations) {
        Json jumps = Json::array();
        for (const auto& [level, space] : f.jumps) {
            Json basis = Json::array();
            for (const auto& row : space.rows) basis.push_back(rational_vector_to_json(row));
            jumps.push_back(Json{{"s", level}, {"basis", std::move(basis)}});
        }
        filts[ctx.omega.classes[static_cast<std::size_t>(rc)].id] = std::move(jumps);
    }
    return Json{{"rank", b.rank}, {"filtrations", std::move(filts)}};
}

inline BundleData bundle_from_json(const SystemContext& ctx, const Json& j) {
    if (!j.is_object()) throw SchemaError("bundle document must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "rank" && key != "filtrations")
            throw SchemaError("unknown bundle key \"" + key + "\"");
    if (!j.contains("rank") || !j.contains("filtrations"))
        throw SchemaError("bundle document needs \"rank\" and \"filtrations\"");
    long long rank = parse_integer(j.at("rank"), "rank");
    if (rank <= 0) throw SchemaError("rank: must be positive");
    if (!j.at("filtrations").is_object()) throw SchemaError("filtrations: expected an object");

    std::map<std::string, int> ray_ids;
    for (int rc : ctx.lambda) ray_ids.emplace(ctx.omega.classes[static_cast<std::size_t>(rc)].id, rc);

    std::map<int, Filtration> filts;
    for (const auto& [id, arr] : j.at("filtrations").items()) {
        const std::string where = "filtrations." + id;
        auto it = ray_ids.find(id);
        if (it == ray_ids.end())
            throw SchemaError(where + ": not a ray class of the system");
        if (!arr.is_array() || arr.empty())
            throw SchemaError(where + ": expected a nonempty jump array");
        std::vector<std::pair<long long, Subspace>> jumps;
        for (const auto& entry : arr) {
            if (!entry.is_object() || !entry.contains("s") || !entry.contains("basis") ||
                entry.size() != 2)
                throw SchemaError(where + ": a jump is {\"s\": level, \"basis\": [...]}");
            long long s = parse_integer(entry.at("s"), where + ".s");
            const Json& basis = entry.at("basis");
            if (!basis.is_array() || basis.empty())
                throw SchemaError(where + ".basis: expected a nonempty array of vectors");
            QMatrix rows;
            for (const auto& row : basis)
                rows.push_back(parse_rational_vector(row, static_cast<int>(rank), where + ".basis"));
            jumps.emplace_back(s, subspace_span(static_cast<int>(rank), rows));
        }
        try {
            filts.emplace(it->second, make_filtration(static_cast<int>(rank), std::move(jumps)));
        } catch (const std::exception& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    try {
        return make_bundle(ctx, static_cast<int>(rank), std::move(filts));
    } catch (const Error& e) {
        throw SchemaError(std::string("filtrations: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// piecewise-linear map documents
// { "pieces": { "<cone-class-id>": { "basis": [[rationals]], "weights": [[integers]] } } }

inline Json plmap_to_json(const SystemContext& ctx, const PLMap& p) {
    Json pieces = Json::object();
    for (const auto& [c, piece] : p.pieces) {
        Json basis = Json::array(), weights = Json::array();
        for (const auto& v : piece.basis) basis.push_back(rational_vector_to_json(v));
        for (const auto& w : piece.weights) weights.push_back(lattice_vector_to_json(w));
        pieces[ctx.omega.classes[static_cast<std::size_t>(c)].id] =
            Json{{"basis", std::move(basis)}, {"weights", std::move(weights)}};
    }
    return Json{{"pieces", std::move(pieces)}};
}

inline PLMap plmap_from_json(const SystemContext& ctx, const Json& j) {
    if (!j.is_object() || !j.contains("pieces") || j.size() != 1)
        throw SchemaError("plmap document is {\"pieces\": {...}}");
    const Json& pieces = j.at("pieces");
    if (!pieces.is_object() || pieces.empty())
        throw SchemaError("pieces: expected a nonempty object");

    std::map<std::string, int> class_ids;
    for (std::size_t c = 0; c < ctx.omega.classes.size(); ++c)
        class_ids.emplace(ctx.omega.classes[c].id, static_cast<int>(c));

    PLMap out;
    for (const auto& [id, value] : pieces.items()) {
        const std::string where = "pieces." + id;
        auto it = class_ids.find(id);
        if (it == class_ids.end())
            throw SchemaError(where + ": not a cone class of the system");
        if (!value.is_object() || !value.contains("basis") || !value.contains("weights") ||
            value.size() != 2)
            throw SchemaError(where + ": a piece is {\"basis\": [...], \"weights\": [...]}");
        const Json& basis = value.at("basis");
        const Json& weights = value.at("weights");
        if (!basis.is_array() || basis.empty())
            throw SchemaError(where + ".basis: expected a nonempty array of vectors");
        if (!weights.is_array())
            throw SchemaError(where + ".weights: expected an array of integer vectors");
        if (out.rank == 0) out.rank = static_cast<int>(basis.size());
        PLPiece piece;
        for (const auto& row : basis)
            piece.basis.push_back(parse_rational_vector(row, out.rank, where + ".basis"));
        for (const auto& w : weights)
            piece.weights.push_back(parse_lattice_vector(w, ctx.sys.ambient, where + ".weights"));
        out.pieces.emplace(it->second, std::move(piece));
    }
    return out;
}

// ---------------------------------------------------------------------------
// example corpus

inline std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

// Writes the four example systems and their tangent bundles, byte-identical
// across runs; returns the written paths in write order.
inline std::vector<std::string> emit_examples(const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::pair<std::string, SystemOfFans>> systems = {
        {"double_origin", double_origin_system()},
        {"fig1_system", fig1_system()},
        {"fig2_system", fig2_system()},
        {"a3_doubled", a3_doubled_system()},
    };
    std::vector<std::string> written;
    auto emit = [&written](const std::filesystem::path& path, const Json& doc) {
        std::ofstream out(path, std::ios::binary);
        out << dump_document(doc);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        written.push_back(path.string());
    };
    for (const auto& [name, sys] : systems) {
        emit(std::filesystem::path(dir) / (name + ".json"), system_to_json(sys));
        SystemContext ctx = make_context(sys);
        std::string tangent_name = name == "fig1_system" || name == "fig2_system"
                                       ? name.substr(0, 4) + "_tangent"
                                       : name + "_tangent";
        emit(std::filesystem::path(dir) / (tangent_name + ".json"),
             bundle_to_json(ctx, tangent_bundle(ctx)));
    }
    return written;
}

}  // namespace prevar
