#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "exlie/certify.hpp"
#include "exlie/presentation.hpp"
#include "json.hpp"

using namespace exlie;
using nlohmann::ordered_json;

namespace {

constexpr int kPass = 0, kCheckFailed = 1, kUsage = 2;

struct Config {
    std::string family;
    int n = 0;
    std::string edges;
    std::string alpha, beta, gamma;
    std::vector<std::string> field{"rationals"};
    std::string out;
    std::string format = "text";
    std::uint64_t seed = 1;
    int cap = 0;
    std::string export_path;
    std::string match_against;
    bool quick = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Field parse_field(const std::vector<std::string>& f) {
    if (f.size() == 1 && (f[0] == "rationals" || f[0] == "Q" || f[0] == "q")) return Field::rationals();
    if (f.size() == 2 && f[0] == "gf") {
        try {
            std::size_t pos = 0;
            std::uint64_t p = std::stoull(f[1], &pos);
            if (pos != f[1].size()) throw UsageError("bad prime " + f[1]);
            return Field::prime(p);
        } catch (const std::logic_error&) {
            throw UsageError("bad prime " + f[1]);
        }
    }
    throw UsageError("--field takes 'rationals' or 'gf <p>'");
}

Family require_family(const Config& c) {
    if (c.family.empty()) throw UsageError("--family is required");
    return parse_family(c.family);
}

RealizationParams parse_params(const Config& c, Field F) {
    RealizationParams p;
    if (!c.alpha.empty()) p.alpha = F.parse(c.alpha);
    if (!c.beta.empty()) p.beta = F.parse(c.beta);
    if (!c.gamma.empty()) p.gamma = F.parse(c.gamma);
    return p;
}

// "alpha=4,beta=8" on top of the primary parameters
RealizationParams parse_assignments(const std::string& spec, Field F, RealizationParams p) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("expected name=value in '" + item + "'");
        std::string k = item.substr(0, eq), v = item.substr(eq + 1);
        if (k == "alpha") p.alpha = F.parse(v);
        else if (k == "beta") p.beta = F.parse(v);
        else if (k == "gamma") p.gamma = F.parse(v);
        else throw UsageError("unknown parameter '" + k + "'");
    }
    return p;
}

std::uint64_t effective_seed(const Config& c) {
    if (const char* env = std::getenv("EXTREMAL_LIE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::logic_error&) {
            throw UsageError("EXTREMAL_LIE_SEED must be a non-negative integer");
        }
    }
    return c.seed;
}

std::string matrix_text(const Matrix& m) {
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m(i, j).to_string();
        s += "]\n";
    }
    return s;
}

ordered_json matrix_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json r = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).to_string());
        rows.push_back(r);
    }
    return rows;
}

int cmd_present(const Config& c, std::ostream& os) {
    PresentationInput in;
    in.field = parse_field(c.field);
    in.degree_cap = c.cap;
    std::optional<long> expected;
    if (!c.edges.empty()) {
        in.graph = SimpleGraph::parse_edges(c.edges, c.n);
    } else {
        Family fam = require_family(c);
        in.graph = build_family_graph(fam, c.n);
        expected = expected_catalog_size(fam, c.n);
    }
    GradedLieAlgebra L;
    try {
        L = build_L0(in);
    } catch (const TruncatedAtCap& e) {
        os << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    const bool ok = !expected || static_cast<long>(L.dim()) == *expected;
    if (c.format == "json") {
        ordered_json j;
        j["graph"] = in.graph.to_string();
        j["field"] = in.field.name();
        j["profile"] = L.profile();
        j["dim"] = L.dim();
        if (expected) j["dim_expected"] = *expected;
        ordered_json basis = ordered_json::array();
        for (const auto& m : L.labels()) basis.push_back(monomial_to_string(m));
        j["basis"] = basis;
        os << j.dump(2) << "\n";
    } else {
        os << "graph " << in.graph.to_string() << " over " << in.field.name() << "\n";
        os << "profile " << L.profile_text() << "\n";
        os << "dim " << L.dim();
        if (expected) os << " (expected " << *expected << ")";
        os << "\n";
        for (std::size_t k = 0; k < L.dim(); ++k)
            os << "  " << k + 1 << ": " << monomial_to_string(L.labels()[k]) << "  degree " << L.degrees()[k] << "\n";
    }
    if (!c.export_path.empty()) {
        // nonzero structure constants [e_i, e_j] = sum c_k e_k for i < j
        ordered_json sc = ordered_json::array();
        for (std::size_t i = 0; i < L.dim(); ++i)
            for (std::size_t j = i + 1; j < L.dim(); ++j) {
                Vector v = to_dense(L.field(), L.dim(), L.basis_bracket(i, j));
                for (std::size_t k = 0; k < L.dim(); ++k)
                    if (!v[k].is_zero()) sc.push_back({i + 1, j + 1, k + 1, v[k].to_string()});
            }
        std::ofstream f(c.export_path);
        if (!f) throw UsageError("cannot write " + c.export_path);
        f << ordered_json{{"dim", L.dim()}, {"structure_constants", sc}}.dump(1) << "\n";
    }
    return ok ? kPass : kCheckFailed;
}

int cmd_realize(const Config& c, std::ostream& os) {
    Field F = parse_field(c.field);
    Family fam = require_family(c);
    BuiltRealization B = build_realization(fam, c.n, parse_params(c, F), F);
    GraphCheck g = graph_realization_check(B.L, B.gens, build_family_graph(fam, c.n));
    const std::size_t expected = static_cast<std::size_t>(expected_catalog_size(fam, c.n));
    bool in_form = true;
    if (B.R.form)
        for (const auto& m : B.R.gens) in_form = in_form && B.R.form->preserves(m);
    const bool ok = g.ok && in_form && B.L.dim() == expected;
    if (c.format == "json") {
        ordered_json j;
        j["family"] = family_name(fam);
        j["n"] = c.n;
        j["field"] = F.name();
        ordered_json gens = ordered_json::array();
        for (const auto& m : B.R.gens) gens.push_back(matrix_json(m));
        j["generators"] = gens;
        j["graph_match"] = g.pattern_ok;
        j["extremal"] = g.extremal;
        j["dim"] = B.L.dim();
        j["dim_expected"] = expected;
        j["form"] = B.R.form ? (B.R.form->kind == FormKind::Orthogonal ? "orthogonal" : "symplectic") : "none";
        j["form_preserved"] = in_form;
        j["verdict"] = ok ? "pass" : "fail";
        os << j.dump(2) << "\n";
    } else {
        os << family_name(fam) << c.n << " over " << F.name() << "\n";
        for (std::size_t i = 0; i < B.R.gens.size(); ++i) os << "x" << i + 1 << " =\n" << matrix_text(B.R.gens[i]);
        os << "graph " << (g.pattern_ok ? "matches" : "does not match");
        if (g.witness) os << " (first difference at {" << g.witness->first << "," << g.witness->second << "})";
        os << "\n";
        bool all = true;
        for (bool e : g.extremal) all = all && e;
        os << "generators extremal: " << (all ? "yes" : "no") << "\n";
        os << "dim " << B.L.dim() << " (expected " << expected << ")\n";
        if (B.R.form) os << "form preserved: " << (in_form ? "yes" : "no") << "\n";
        os << (ok ? "pass" : "fail") << "\n";
    }
    return ok ? kPass : kCheckFailed;
}

ordered_json certificate_json(const IsomorphismCertificate& c) {
    ordered_json j;
    j["family"] = family_name(c.family);
    j["n"] = c.n;
    j["field"] = c.field.name();
    j["route"] = c.route;
    if (!c.model_params.empty()) j["model_params"] = c.model_params;
    j["psi1"] = c.psi1.to_strings();
    j["psi2"] = c.psi2.to_strings();
    j["pairs_verified"] = c.pairs_verified;
    j["map"] = matrix_json(c.map);
    return j;
}

int cmd_certify(const Config& c, std::ostream& os) {
    Field F = parse_field(c.field);
    Family fam = require_family(c);
    RealizationParams p = parse_params(c, F);
    CertifyOptions opt;
    opt.seed = effective_seed(c);
    CertReport rep = certify_family(fam, c.n, p, F, opt);
    bool ok = rep.verdict;
    std::optional<ordered_json> match;
    if (!c.match_against.empty()) {
        RealizationParams q = parse_assignments(c.match_against, F, p);
        BuiltRealization a = build_realization(fam, c.n, p, F), b = build_realization(fam, c.n, q, F);
        try {
            match = certificate_json(match_algebras(fam, {&a.L, a.gens}, {&b.L, b.gens}));
        } catch (const Error& e) {
            match = ordered_json{{"error", e.what()}};
            ok = false;
        }
    }
    if (c.format == "json" || match) {
        ordered_json rj = ordered_json::parse(rep.to_json());
        if (match) os << ordered_json{{"report", rj}, {"certificate", *match}}.dump(2) << "\n";
        else os << rj.dump(2) << "\n";
    } else {
        os << family_name(fam) << c.n << " over " << rep.field << ": " << (rep.verdict ? "pass" : "fail") << "\n";
        os << "dim " << rep.dim << " (expected " << rep.dim_expected << "), catalog rank " << rep.catalog_rank << "\n";
        os << "graph " << (rep.graph_match ? "matches" : "does not match") << ", spanning " << rep.spanning.passed << "/"
           << rep.spanning.tried << "\n";
        for (const auto& g : rep.genericity) os << "  " << (g.holds ? "holds " : "FAILS ") << g.name << "\n";
        for (const auto& [k, t] : rep.identities) os << "  " << k << " " << t.passed << "/" << t.tried << "\n";
        for (const auto& n : rep.notes) os << "note: " << n << "\n";
        if (!rep.error.empty()) os << "error: " << rep.error << "\n";
    }
    return ok ? kPass : kCheckFailed;
}

int cmd_selftest(const Config& c, std::ostream& os) {
    acceptance::Options opt;
    opt.quick = c.quick;
    opt.seed = effective_seed(c);
    int failed = 0;
    acceptance::run_all(opt, [&](const acceptance::CriterionResult& r) {
        os << acceptance::format_line(r) << std::endl;
        failed += !r.pass;
    });
    os << (10 - failed) << "/10 criteria pass\n";
    return failed ? kCheckFailed : kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extremal elements and the Lie algebras they generate"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--out", c.out, "write output to this file");
        s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        s->add_option("--seed", c.seed, "sampling seed (EXTREMAL_LIE_SEED overrides)");
    };
    auto family_opts = [&](CLI::App* s) {
        s->add_option("--family", c.family, "A, B, C or D");
        s->add_option("--n", c.n, "number of vertices");
        s->add_option("--field", c.field, "rationals | gf <p>")->expected(1, 2);
    };
    auto param_opts = [&](CLI::App* s) {
        s->add_option("--alpha", c.alpha, "rational literal p/q");
        s->add_option("--beta", c.beta, "rational literal p/q");
        s->add_option("--gamma", c.gamma, "rational literal p/q");
    };

    CLI::App* present = app.add_subcommand("present", "build the graded presentation algebra");
    family_opts(present);
    common(present);
    present->add_option("--edges", c.edges, "custom graph, e.g. 1-2,2-3");
    present->add_option("--cap", c.cap, "degree cap (default 2n-1)");
    present->add_option("--export", c.export_path, "write nonzero structure constants as JSON");

    CLI::App* realize = app.add_subcommand("realize", "build the matrix realization");
    family_opts(realize);
    param_opts(realize);
    common(realize);

    CLI::App* certify = app.add_subcommand("certify", "certify a realization");
    family_opts(certify);
    param_opts(certify);
    common(certify);
    certify->add_option("--match-against", c.match_against, "second parameter set, e.g. alpha=4,beta=8");

    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
    common(selftest);
    selftest->add_flag("--quick", c.quick, "skip abstract builds with n >= 7");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kUsage;
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!c.out.empty()) {
        file.open(c.out);
        if (!file) {
            std::cerr << "cannot write " << c.out << "\n";
            return kUsage;
        }
        os = &file;
    }
    try {
        if (*present) return cmd_present(c, *os);
        if (*realize) return cmd_realize(c, *os);
        if (*certify) return cmd_certify(c, *os);
        return cmd_selftest(c, *os);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        // parameter and input errors from the library
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
