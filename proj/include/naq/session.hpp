#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "naq/backstop.hpp"
#include "naq/bracket_checks.hpp"
#include "naq/gauge.hpp"
#include "naq/identities.hpp"
#include "naq/parser.hpp"
#include "naq/version.hpp"

namespace naq {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// serialization shared between the CLI, config files and reports
// ---------------------------------------------------------------------------

inline Json bidiff_to_json(const BidiffOperator& op) {
    Json terms = Json::array();
    for (const auto& t : op.terms()) {
        Json rec;
        rec["coeff"] = t.coeff.str();
        rec["alpha"] = Json::array();
        for (std::uint32_t e : t.alpha) rec["alpha"].push_back(e);
        rec["beta"] = Json::array();
        for (std::uint32_t e : t.beta) rec["beta"].push_back(e);
        terms.push_back(std::move(rec));
    }
    return terms;
}

inline MultiIndex multi_index_from_json(const Json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw Error("multi-index must be an integer vector of length " + std::to_string(dim));
    MultiIndex m(dim);
    for (int i = 0; i < dim; ++i) {
        long long v = j[static_cast<std::size_t>(i)].get<long long>();
        if (v < 0) throw Error("multi-index entries must be non-negative");
        m[i] = static_cast<std::uint32_t>(v);
    }
    return m;
}

inline BidiffOperator bidiff_from_json(const Json& j, int dim) {
    if (!j.is_array()) throw Error("operator must be an array of term records");
    BidiffOperator op(dim);
    for (const auto& rec : j) {
        Polynomial coeff = parse_poly_expr(rec.at("coeff").get<std::string>(), dim);
        op.add_term(std::move(coeff), multi_index_from_json(rec.at("alpha"), dim),
                    multi_index_from_json(rec.at("beta"), dim));
    }
    return op;
}

/// Ordered list of corrections C_1..C_K, each a list of term records.
inline Json corrections_to_json(const StarProduct& s) {
    Json out = Json::array();
    for (int r = 1; r <= s.truncation_order(); ++r) out.push_back(bidiff_to_json(s.correction(r)));
    return out;
}

inline std::vector<BidiffOperator> corrections_from_json(const Json& j, int dim) {
    if (!j.is_array()) throw Error("corrections must be an array (one entry per lambda order)");
    std::vector<BidiffOperator> out;
    for (const auto& layer : j) out.push_back(bidiff_from_json(layer, dim));
    return out;
}

// ---------------------------------------------------------------------------
// session configuration
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& check_catalogue() {
    static const std::vector<std::string> names{"associative", "alternative", "flexible",
                                                "right_alternative", "moufang", "sandwich"};
    return names;
}

struct SessionConfig {
    int dimension = 0;
    int truncation_order = 0;
    Json bivector;
    Json product;
    std::vector<std::string> checks;
    std::optional<int> certificate_degree_override;
    std::uint64_t corpus_seed = 0;
    std::string base_dir; // for resolving a custom product file
};

inline SessionConfig parse_session_config(const Json& j, const std::string& base_dir = "") {
    SessionConfig c;
    c.base_dir = base_dir;
    if (!j.is_object()) throw Error("config must be a JSON object");
    c.dimension = j.at("dimension").get<int>();
    c.truncation_order = j.at("truncation_order").get<int>();
    if (c.dimension < 1) throw Error("dimension must be >= 1");
    if (c.truncation_order < 1) throw Error("truncation_order must be >= 1");
    c.bivector = j.at("bivector");
    c.product = j.at("product");

    Json checks = j.value("checks", Json::array({"all"}));
    if (checks.is_string()) checks = Json::array({checks});
    bool all = false;
    std::vector<std::string> requested;
    for (const auto& name : checks) {
        std::string s = name.get<std::string>();
        if (s == "all") {
            all = true;
            continue;
        }
        bool known = false;
        for (const auto& k : check_catalogue()) known = known || k == s;
        if (!known) throw Error("unknown check '" + s + "'");
        requested.push_back(s);
    }
    if (all)
        c.checks = {"associative", "alternative", "flexible", "right_alternative", "sandwich"};
    else
        c.checks = std::move(requested);

    if (j.contains("certificate_degree_override") && !j["certificate_degree_override"].is_null()) {
        int d = j["certificate_degree_override"].get<int>();
        if (d < 0) throw Error("certificate_degree_override must be >= 0");
        c.certificate_degree_override = d;
    }
    c.corpus_seed = j.value("corpus_seed", 0ull);
    return c;
}

inline Bivector build_bivector(const SessionConfig& c) {
    const Json& b = c.bivector;
    if (!b.is_object() || !b.contains("name")) throw Error("bivector must be an object with a name");
    std::string name = b.at("name").get<std::string>();
    int n = c.dimension;

    auto expect_dim = [&](int want) {
        if (n != want)
            throw Error("bivector '" + name + "' requires dimension " + std::to_string(want));
    };

    if (name == "zero") return Bivector::zero(n);
    if (name == "su2") {
        expect_dim(3);
        return Bivector::su2();
    }
    if (name == "heisenberg") {
        expect_dim(3);
        return Bivector::heisenberg();
    }
    if (name == "symplectic") {
        if (n % 2 != 0) throw Error("symplectic bivector requires even dimension");
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n),
                                             std::vector<Rational>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < n / 2; ++i) {
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + n / 2)] = 1;
            m[static_cast<std::size_t>(i + n / 2)][static_cast<std::size_t>(i)] = -1;
        }
        return Bivector::constant(n, m);
    }
    if (name == "monopole") {
        expect_dim(6);
        const Json& f = b.at("b_field");
        if (!f.is_array() || f.size() != 3)
            throw Error("monopole b_field must list three expressions");
        std::array<Polynomial, 3> comps{Polynomial(6), Polynomial(6), Polynomial(6)};
        for (int i = 0; i < 3; ++i)
            comps[static_cast<std::size_t>(i)] =
                parse_poly_expr(f[static_cast<std::size_t>(i)].get<std::string>(), 6);
        return Bivector::monopole(comps);
    }
    if (name == "linear") {
        const Json& sc = b.at("structure_constants");
        std::vector<std::vector<std::vector<Rational>>> cc(
            static_cast<std::size_t>(n),
            std::vector<std::vector<Rational>>(static_cast<std::size_t>(n),
                                               std::vector<Rational>(static_cast<std::size_t>(n), 0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Polynomial p = parse_poly_expr(
                        sc.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j))
                            .at(static_cast<std::size_t>(k)).get<std::string>(), n);
                    if (p.degree() > 0) throw Error("structure constants must be rationals");
                    cc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                      [static_cast<std::size_t>(k)] = p.coeff(MultiIndex(n));
                }
        return Bivector::linear(n, cc);
    }
    if (name == "constant" || name == "custom") {
        const Json& entries = b.at("entries");
        if (!entries.is_array() || static_cast<int>(entries.size()) != n)
            throw Error("bivector entries must be an n x n matrix of expressions");
        std::vector<Polynomial> e;
        for (const auto& row : entries) {
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw Error("bivector entries must be an n x n matrix of expressions");
            for (const auto& cell : row) {
                Polynomial p = parse_poly_expr(cell.get<std::string>(), n);
                if (name == "constant" && p.degree() > 0)
                    throw Error("constant bivector entries must be rationals");
                e.push_back(std::move(p));
            }
        }
        return Bivector(n, std::move(e));
    }
    throw Error("unknown bivector constructor '" + name + "'");
}

inline StarProduct build_product(const SessionConfig& c, const Bivector& p) {
    const Json& j = c.product;
    if (!j.is_object() || !j.contains("type")) throw Error("product must be an object with a type");
    std::string type = j.at("type").get<std::string>();
    if (type == "moyal") return make_moyal(p, c.truncation_order);
    if (type == "flexible") return make_flexible(p, c.truncation_order);
    if (type == "custom") {
        Json corrections;
        if (j.contains("corrections")) {
            corrections = j.at("corrections");
        } else {
            std::string path = j.at("file").get<std::string>();
            if (!c.base_dir.empty() && !path.empty() && path[0] != '/')
                path = c.base_dir + "/" + path;
            std::ifstream in(path);
            if (!in) throw Error("cannot open corrections file '" + path + "'");
            corrections = Json::parse(in);
        }
        return make_custom(p, corrections_from_json(corrections, c.dimension),
                           c.truncation_order);
    }
    throw Error("unknown product type '" + type + "'");
}

// ---------------------------------------------------------------------------
// report emission
// ---------------------------------------------------------------------------

namespace detail {

inline Json bracket_verdict_json(const BracketVerdict& v,
                                 const std::vector<std::string>& arg_names) {
    Json out;
    out["status"] = v.holds() ? "holds_on_certificate" : "fails";
    out["certificate_degree"] = v.certificate_degree;
    if (v.witness) {
        Json w;
        for (std::size_t i = 0; i < arg_names.size(); ++i)
            w[arg_names[i]] = v.witness->arguments[i].str();
        w["defect"] = v.witness->defect.str();
        out["witness"] = std::move(w);
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

inline Json identity_verdict_json(const IdentityVerdict& v,
                                  const std::optional<BackstopResult>& backstop) {
    Json out;
    out["identity"] = identity_label(v.identity);
    out["status"] = v.holds() ? "holds_on_certificate" : "fails";
    out["certificate_degree"] = v.certificate_degree;
    out["slot_degrees"] = v.slot_degrees;
    out["lambda_orders_checked"] = v.lambda_orders_checked;
    if (v.witness) {
        Json w;
        Json args;
        for (std::size_t i = 0; i < v.slot_names.size(); ++i)
            args[v.slot_names[i]] = v.witness->arguments[i].str();
        w["arguments"] = std::move(args);
        w["lambda_order"] = v.witness->lambda_order;
        w["defect"] = v.witness->defect.str();
        w["generator"] = v.witness->generator;
        out["witness"] = std::move(w);
    } else {
        out["witness"] = nullptr;
    }
    if (backstop) {
        Json b;
        b["tuples"] = backstop->tuples;
        b["violations"] = backstop->violations;
        out["backstop"] = std::move(b);
    } else {
        out["backstop"] = nullptr;
    }
    return out;
}

inline Json echo_config(const SessionConfig& c) {
    Json out;
    out["dimension"] = c.dimension;
    out["truncation_order"] = c.truncation_order;
    out["bivector"] = c.bivector;
    out["product"] = c.product;
    out["checks"] = c.checks;
    out["certificate_degree_override"] =
        c.certificate_degree_override ? Json(*c.certificate_degree_override) : Json(nullptr);
    out["corpus_seed"] = c.corpus_seed;
    return out;
}

} // namespace detail

/// Runs bracket diagnostics and the requested identity checks and builds
/// the machine-readable report. Identical configs (including the corpus
/// seed) reproduce the report byte for byte apart from the timing block.
inline Json run_session(const SessionConfig& config, int threads = 0) {
    auto t0 = std::chrono::steady_clock::now();
    constexpr int kBackstopTuples = 100;

    Bivector p = build_bivector(config);
    StarProduct s = build_product(config, p);

    Json report;
    report["engine"] = Json{{"name", kEngineName}, {"version", kEngineVersion}};
    report["config"] = detail::echo_config(config);

    // bracket diagnostics always run first: they situate the product
    // relative to the Jacobi <-> Malcev correspondence
    {
        Json diag;
        JacobiVerdict jv = jacobi_check(p);
        Json jj;
        jj["status"] = jv.holds ? "holds" : "fails";
        if (jv.witness) {
            Json w;
            w["indices"] = Json::array({jv.witness->indices[0] + 1, jv.witness->indices[1] + 1,
                                        jv.witness->indices[2] + 1});
            Json pt = Json::array();
            for (const auto& r : jv.witness->point) pt.push_back(r.str());
            w["point"] = std::move(pt);
            w["value"] = jv.witness->value.str();
            jj["witness"] = std::move(w);
        } else {
            jj["witness"] = nullptr;
        }
        diag["jacobi"] = std::move(jj);

        int mb = std::max(malcev_certificate_bound(),
                          config.certificate_degree_override.value_or(0));
        BracketVerdict mv = malcev_check(p, mb, threads);
        diag["malcev"] = detail::bracket_verdict_json(mv, {"f", "g", "h"});

        int sb = std::max(shestakov_certificate_bound(),
                          config.certificate_degree_override.value_or(0));
        ShestakovVerdict sv = shestakov_check(p, sb, threads);
        Json sj;
        sj["eq11"] = detail::bracket_verdict_json(sv.eq11, {"f", "g", "h"});
        sj["eq12"] = detail::bracket_verdict_json(sv.eq12, {"f", "g", "h", "d"});
        diag["shestakov"] = std::move(sj);

        report["bracket_diagnostics"] = std::move(diag);
    }

    CheckOptions opts;
    opts.degree_override = config.certificate_degree_override;
    opts.threads = threads;

    std::vector<IdentityVerdict> verdicts;
    auto add = [&](const IdentityVerdict& v) {
        for (const auto& existing : verdicts)
            if (existing.identity == v.identity) return;
        verdicts.push_back(v);
    };
    for (const auto& name : config.checks) {
        if (name == "associative") add(check_associative(s, opts));
        else if (name == "alternative") add(check_alternative(s, opts));
        else if (name == "flexible") add(check_flexible(s, opts));
        else if (name == "right_alternative") {
            RightAlternativeReport r = check_right_alternative(s, opts);
            add(r.square);
            add(r.moufang);
        } else if (name == "moufang") {
            add(detail::run_identity_check(IdentityName::right_moufang, s, opts));
        } else if (name == "sandwich") {
            SandwichReport r = check_sandwich_identity(s, opts);
            add(r.eq19);
            add(r.eq17);
        } else {
            throw Error("unknown check '" + name + "'");
        }
    }

    Json checks = Json::array();
    int check_index = 0;
    for (const auto& v : verdicts) {
        std::optional<BackstopResult> backstop;
        if (v.holds()) {
            Rng rng(config.corpus_seed * 1000003ull + static_cast<std::uint64_t>(check_index));
            backstop = identity_backstop(v.identity, s, v.slot_degrees, rng, kBackstopTuples);
        }
        checks.push_back(detail::identity_verdict_json(v, backstop));
        ++check_index;
    }
    report["checks"] = std::move(checks);

    auto t1 = std::chrono::steady_clock::now();
    report["timing"] = Json{
        {"total_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}};
    return report;
}

/// Exit-code contract helper: true iff every requested identity check in
/// the report holds.
inline bool report_all_hold(const Json& report) {
    for (const auto& v : report.at("checks"))
        if (v.at("status").get<std::string>() != "holds_on_certificate") return false;
    return true;
}

} // namespace naq
