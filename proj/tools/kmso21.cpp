// kmso21 command-line driver.
#include "verify.hpp"

#include "kmso21/decompose.hpp"
#include "kmso21/expr.hpp"
#include "kmso21/highest_weight.hpp"
#include "kmso21/unirep.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

using nlohmann::json;
using namespace kmso21;

namespace {

// Thrown for structural diagnostics (exit code 2) after the report has been written.
struct Diagnostic {
    std::string what;
};

struct Globals {
    std::string cartan = "2,-3;-3,2";
    int64_t cutoff = 8;
    int window = 4;
    double tol = 1e-8;
    std::string format = "text";
    std::string out;
    int max_exact_height = 0;
    std::string config;
};

const std::set<std::string> config_keys{"cartan", "cutoff", "window", "tol", "format", "out", "max_exact_height"};

CartanMatrix load_cartan(const std::string& src) {
    if (src == "fib") return CartanMatrix::fib();
    if (!src.empty() && src[0] == '@') {
        std::ifstream in(src.substr(1));
        if (!in) throw std::runtime_error("cannot read Cartan matrix file " + src.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        return CartanMatrix::from_json_text(ss.str());
    }
    return CartanMatrix::parse_flag(src);
}

void apply_config(CLI::App& app, Globals& g) {
    if (g.config.empty()) return;
    std::ifstream in(g.config);
    if (!in) throw std::runtime_error("cannot read config file " + g.config);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!config_keys.count(it.key())) throw std::runtime_error("unknown config key: " + it.key());
    auto unset = [&](const std::string& flag) { return app.get_option(flag)->count() == 0; };
    try {
        if (j.contains("cartan") && unset("--cartan")) {
            const auto& c = j["cartan"];
            g.cartan = c.is_string() ? c.get<std::string>() : CartanMatrix::from_json_text(c.dump()).flag_str();
        }
        if (j.contains("cutoff") && unset("--cutoff")) g.cutoff = j["cutoff"].get<int64_t>();
        if (j.contains("window") && unset("--window")) g.window = j["window"].get<int>();
        if (j.contains("tol") && unset("--tol")) g.tol = j["tol"].get<double>();
        if (j.contains("format") && unset("--format")) g.format = j["format"].get<std::string>();
        if (j.contains("out") && unset("--out")) g.out = j["out"].get<std::string>();
        if (j.contains("max_exact_height") && unset("--max-exact-height")) g.max_exact_height = j["max_exact_height"].get<int>();
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("bad config value: ") + e.what());
    }
}

void validate(const Globals& g) {
    if (g.cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
    if (g.window < 2) throw std::invalid_argument("window must be at least 2");
    if (!(g.tol > 0)) throw std::invalid_argument("tol must be positive");
    static const std::set<std::string> formats{"json", "text", "csv", "svg"};
    if (!formats.count(g.format)) throw std::invalid_argument("format must be one of json, text, csv, svg");
    if (g.max_exact_height < 0) throw std::invalid_argument("max-exact-height must be nonnegative");
}

std::string fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Values of every option given to the selected subcommand chain, for the config hash.
json subcommand_args(const CLI::App* app) {
    json j = json::object();
    for (const auto* opt : app->get_options()) {
        if (opt->get_name() == "--help" || opt->count() == 0) continue;
        auto res = opt->results();
        j[opt->get_name()] = res.size() == 1 ? json(res[0]) : json(res);
    }
    for (const auto* sub : app->get_subcommands()) j["subcommand:" + sub->get_name()] = subcommand_args(sub);
    return j;
}

class Run {
public:
    Run(const Globals& g, json effective) : g_(g), effective_(std::move(effective)) {
        hash_ = fnv1a(effective_.dump());
        cartan_ = std::make_unique<CartanMatrix>(load_cartan(g.cartan));
        int mx = g.max_exact_height ? g.max_exact_height : AlgebraContext::default_max_exact_height(cartan_->rank());
        ctx_ = std::make_unique<AlgebraContext>(*cartan_, mx);
    }

    const AlgebraContext& ctx() const { return *ctx_; }
    const Globals& g() const { return g_; }

    json wrap(const json& report) const {
        return {{"schema_version", 1},
                {"config_hash", hash_},
                {"config", effective_},
                {"verified_window", {{"cutoff", g_.cutoff}, {"window", g_.window}, {"max_exact_height", ctx_->max_exact_height()}}},
                {"report", report}};
    }

    void emit(const std::string& text) const {
        if (g_.out.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << "\n";
            return;
        }
        std::ofstream out(g_.out);
        if (!out) throw std::runtime_error("cannot write " + g_.out);
        out << text;
        if (!text.empty() && text.back() != '\n') out << "\n";
    }

    void emit_json(const json& report) const { emit(wrap(report).dump(2)); }

    void emit_report(const json& report, const std::string& text) const {
        if (g_.format == "json")
            emit_json(report);
        else if (g_.format == "text")
            emit("# config " + hash_ + "\n" + text);
        else
            throw std::invalid_argument("format " + g_.format + " is not available for this command");
    }

    const std::string& hash() const { return hash_; }

private:
    Globals g_;
    json effective_;
    std::string hash_;
    std::unique_ptr<CartanMatrix> cartan_;
    std::unique_ptr<AlgebraContext> ctx_;
};

// "2,1,2", "e[2,1,2]" or compact "e212"
Word parse_word(const std::string& text, bool positive = true) {
    std::string body = text;
    if (!body.empty() && body[0] == 'e') body = body.substr(1);
    if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
    if (body.find(',') == std::string::npos && body.size() > 1 &&
        std::all_of(body.begin(), body.end(), [](unsigned char c) { return std::isdigit(c); })) {
        std::string spaced;
        for (char c : body) spaced += std::string(spaced.empty() ? "" : ",") + c;
        body = spaced;
    }
    RootVector r = parse_root(body);
    Word w{positive, {}};
    for (auto x : r.n) {
        if (x < 1) throw std::invalid_argument("word letters are 1-based: " + text);
        w.letters.push_back(static_cast<int>(x - 1));
    }
    return w;
}

So21Triple make_triple(const AlgebraContext& ctx, const std::string& alpha, const std::string& word, bool principal) {
    if (principal) return build_principal_so21(ctx);
    if (alpha.empty()) throw std::invalid_argument("give --alpha (and optionally --word) or --principal");
    RootVector a = parse_root(alpha);
    if (a.rank() != ctx.rank()) throw std::invalid_argument("alpha has the wrong rank");
    if (ctx.root_multiplicity(a) == 0) throw std::invalid_argument("alpha = (" + a.str() + ") is not a root");
    if (word.empty()) return build_triple_for_root(ctx, a);
    Word w = parse_word(word);
    for (int l : w.letters)
        if (static_cast<size_t>(l) >= ctx.rank()) throw std::invalid_argument("word letter out of range: " + word);
    if (w.weight(ctx.rank()) != a) throw std::invalid_argument("word " + w.str() + " does not have weight alpha");
    if (ctx.cartan().classify_norm(a) == NormClass::spacelike) return build_sl2_real(ctx, a, w);
    return build_so21(ctx, a, w);
}

// ---------------------------------------------------------------- roots

struct RootRow {
    RootVector beta;
    long mult;
    Q norm;
    std::string cls;
    std::string source;
};

std::vector<RootRow> root_rows(const AlgebraContext& ctx, int64_t max_height) {
    std::vector<RootRow> rows;
    for (const auto& [beta, m] : ctx.enumerate_roots(max_height)) {
        if (!beta.is_positive() || m == 0) continue;
        rows.push_back({beta, m, ctx.cartan().inner_product(beta, beta), to_string(ctx.cartan().classify_norm(beta)),
                        beta.height() <= ctx.max_exact_height() ? "gram" : "peterson"});
    }
    std::sort(rows.begin(), rows.end(), [](const RootRow& a, const RootRow& b) {
        if (a.beta.height() != b.beta.height()) return a.beta.height() < b.beta.height();
        return a.beta < b.beta;
    });
    return rows;
}

std::string roots_svg(const std::vector<RootRow>& rows, size_t rank) {
    // simple roots at the lower left and lower right, height grows upwards
    const int step = 34, pad = 40;
    int64_t maxh = 1, span = 1;
    for (const auto& r : rows) {
        maxh = std::max(maxh, r.beta.height());
        span = std::max(span, std::abs(r.beta.n[0] - (rank > 1 ? r.beta.n[1] : 0)));
    }
    int width = static_cast<int>(2 * pad + 2 * span * step), height = static_cast<int>(2 * pad + maxh * step);
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"monospace\" font-size=\"11\">\n";
    for (const auto& r : rows) {
        int64_t a = r.beta.n[0], b = rank > 1 ? r.beta.n[1] : 0;
        int64_t rest = r.beta.height() - a - b;
        int x = static_cast<int>(pad + (span + a - b) * step), y = static_cast<int>(height - pad - (r.beta.height() - 1 - rest) * step);
        const char* color = r.cls == "spacelike" ? "#2a6" : (r.cls == "lightlike" ? "#888" : "#c33");
        os << "  <g class=\"root\" data-root=\"" << r.beta.str() << "\"><circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << color
           << "\"/><text x=\"" << x + 6 << "\" y=\"" << y - 4 << "\">" << r.mult << "</text></g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

int cmd_roots(const Run& run, int64_t max_height) {
    auto rows = root_rows(run.ctx(), max_height);
    const auto& f = run.g().format;
    if (f == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"root", r.beta.n}, {"height", r.beta.height()}, {"mult", r.mult}, {"norm", to_string(r.norm)}, {"class", r.cls},
                           {"source", r.source}});
        run.emit_json({{"cartan", run.ctx().cartan().entries()}, {"max_height", max_height}, {"roots", arr}});
    } else if (f == "csv") {
        std::ostringstream os;
        os << "root,height,norm,class,mult,source\n";
        for (const auto& r : rows)
            os << "\"" << r.beta.str() << "\"," << r.beta.height() << "," << to_string(r.norm) << "," << r.cls << "," << r.mult << "," << r.source << "\n";
        run.emit(os.str());
    } else if (f == "svg") {
        run.emit(roots_svg(rows, run.ctx().rank()));
    } else {
        std::ostringstream os;
        os << "# config " << run.hash() << "\n";
        for (const auto& r : rows)
            os << "(" << r.beta.str() << ")  height " << r.beta.height() << "  norm " << to_string(r.norm) << "  " << r.cls << "  mult " << r.mult
               << "  [" << r.source << "]\n";
        run.emit(os.str());
    }
    return 0;
}

// ---------------------------------------------------------------- unirep

int cmd_unirep_matrix(const Run& run, const std::string& model, double s, double p, double omega, const std::string& params, int range, int cover,
                      const std::string& method) {
    using namespace kmso21::unirep;
    RepParams rep;
    if (model == "disk")
        rep = {Model::discrete, s, 0, -1};
    else if (model == "line")
        rep = {Model::principal, 0, p, omega};
    else
        throw std::invalid_argument("model must be disk or line");
    GroupMatrixOptions opt;
    opt.range = range;
    opt.tol = run.g().tol;
    opt.angular_nodes = std::max(512, 4 * range + 64);
    if (method == "radial")
        opt.disk = DiskMethod::radial;
    else if (method == "boundary")
        opt.disk = DiskMethod::boundary;
    else if (method != "auto")
        throw std::invalid_argument("disk method must be auto, radial or boundary");
    auto g = sl2_from_params(GroupParams::parse(params), cover);
    auto u = group_matrix(rep, g, opt);
    json j = u.to_json();
    j["element"] = g.to_json();
    j["params"] = params;
    if (run.g().format == "json")
        run.emit_json(j);
    else {
        std::ostringstream os;
        os << "# config " << run.hash() << "\n" << u.method << "\nindices " << u.n_min << ".." << u.n_max << ", interior defect " << u.defect << "\n";
        run.emit(os.str());
    }
    return 0;
}

int cmd_unirep_check(const Run& run, double s, std::optional<double> omega) {
    using namespace kmso21::unirep;
    json j;
    bool bad = false;
    const double tol = run.g().tol;
    if (s > 0.5) {
        json norms = json::array();
        double n0 = discrete_norm_sq_quadrature(s, 0);
        for (int n = 0; n <= 4; ++n) {
            double q = discrete_norm_sq_quadrature(s, n) / n0, e = discrete_norm_ratio(s, n);
            double rel = std::abs(q - e) / e;
            bad = bad || rel > 1e-6;
            norms.push_back({{"n", n}, {"quadrature", q}, {"exact", e}, {"rel_error", rel}});
        }
        j["norm_ratios"] = norms;
        j["ground_norm"] = n0;
    }
    json ops = json::array();
    for (int n = 0; n <= 3; ++n) {
        auto r = differential_op_check(Model::discrete, s, n);
        bad = bad || r.max() > tol;
        ops.push_back(r.to_json());
    }
    if (omega) {
        RepParams rp{Model::principal, 0, 0, *omega};
        for (double m : {0.0, 0.5, 1.0}) {
            auto r = differential_op_check(Model::principal, rp.s_complex(), m);
            bad = bad || r.max() > tol;
            ops.push_back(r.to_json());
        }
        double nrm = principal_norm_quadrature(rp.s_complex(), 0);
        bad = bad || std::abs(nrm - 1) > 1e-8;
        j["principal_norm"] = nrm;
    }
    j["operators"] = ops;
    // cover phases for rational s
    Q sq(std::to_string(static_cast<long>(std::lround(s * 1000000))) + "/1000000");
    sq.canonicalize();
    json ph = json::array();
    for (int t : {1, 2}) ph.push_back(cover_phase(sq, t).to_json());
    j["cover_phases"] = ph;
    j["ok"] = !bad;
    if (run.g().format == "json")
        run.emit_json(j);
    else
        run.emit("# config " + run.hash() + "\n" + j.dump(2));
    if (bad) throw Diagnostic{"unirep check: residual above tolerance"};
    return 0;
}

// ---------------------------------------------------------------- figures

int cmd_figures(const Run& run) {
    namespace fs = std::filesystem;
    fs::path dir = run.g().out.empty() ? fs::path("figures") : fs::path(run.g().out);
    fs::create_directories(dir);
    auto write = [&](const fs::path& p, const std::string& s) {
        std::ofstream out(p);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << s;
    };
    auto rows = root_rows(run.ctx(), run.g().cutoff);
    write(dir / "roots.svg", roots_svg(rows, run.ctx().rank()));
    std::ostringstream csv;
    csv << "root,height,mult\n";
    for (const auto& r : rows) csv << "\"" << r.beta.str() << "\"," << r.beta.height() << "," << r.mult << "\n";
    write(dir / "roots.csv", csv.str());
    for (const std::string name : {"fund1", "rho"}) {
        WeightTable t(run.ctx().cartan(), parse_highest_weight(name, run.ctx().rank()), run.g().cutoff);
        write(dir / ("weights_" + name + ".svg"), t.to_svg("V(" + name + ")"));
        write(dir / ("weights_" + name + ".csv"), t.to_csv());
    }
    std::cout << ("# config " + run.hash() + "\nwrote roots.svg, roots.csv, weights_fund1.svg/.csv, weights_rho.svg/.csv to " + dir.string() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kac-Moody algebras under so(2,1) subalgebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--cartan", g.cartan, "Cartan matrix: \"2,-3;-3,2\", fib, or @file.json");
    app.add_option("--cutoff", g.cutoff, "height cutoff");
    app.add_option("--window", g.window, "alpha-steps checked along each principal string");
    app.add_option("--tol", g.tol, "numeric tolerance");
    app.add_option("--format", g.format, "json | text | csv | svg");
    app.add_option("--out", g.out, "output path (stdout if empty)");
    app.add_option("--max-exact-height", g.max_exact_height, "largest height built from Gram matrices");
    app.add_option("--config", g.config, "JSON config file with the same keys as the flags");

    int64_t max_height = 0;
    auto* roots = app.add_subcommand("roots", "positive roots with multiplicities");
    roots->add_option("--max-height", max_height, "largest height listed (default: cutoff)");

    std::string bx, by;
    auto* brk = app.add_subcommand("bracket", "Lie bracket of two elements");
    brk->add_option("x", bx)->required();
    brk->add_option("y", by)->required();

    std::string fx, fy;
    bool invariant = false;
    auto* form = app.add_subcommand("form", "contravariant form (x, y)");
    form->add_option("x", fx)->required();
    form->add_option("y", fy)->required();
    form->add_flag("--invariant", invariant, "use the invariant bilinear form instead");

    std::string alpha, word, lambda = "fund1";
    bool principal = false;
    int depth = 7, simple = 0;
    auto* so21 = app.add_subcommand("so21", "so(2,1) or sl(2) triple of a root");
    so21->add_option("--alpha", alpha);
    so21->add_option("--word", word, "1-based letters, e.g. 1,2");
    so21->add_flag("--principal", principal);

    auto* dec = app.add_subcommand("decompose", "decompose the adjoint or a highest-weight module");
    dec->require_subcommand(1);
    auto* dadj = dec->add_subcommand("adjoint", "adjoint representation");
    dadj->add_option("--alpha", alpha);
    dadj->add_option("--word", word);
    dadj->add_flag("--principal", principal);
    auto* dhw = dec->add_subcommand("hw", "integrable highest-weight module");
    dhw->add_option("--lambda", lambda, "fund1, fund2, rho, 0 or Dynkin labels");
    dhw->add_option("--alpha", alpha);
    dhw->add_option("--word", word);
    dhw->add_flag("--principal", principal);
    dhw->add_option("--depth", depth, "alpha-steps below each column top");
    auto* dreal = dec->add_subcommand("real", "adjoint representation under a real root sl(2)");
    dreal->add_option("--simple", simple, "1-based simple root index");
    dreal->add_option("--alpha", alpha);
    dreal->add_option("--word", word);

    std::string conj_alpha;
    int64_t conj_height = 6;
    auto* conj = app.add_subcommand("conjecture", "scan timelike roots for complementary series");
    auto* conj_alpha_opt = conj->add_option("--alpha", conj_alpha, "roots separated by ';' (no value for none)")->expected(0, 1);
    conj->add_option("--max-height", conj_height, "auto-enumeration height when --alpha is absent");

    auto* uni = app.add_subcommand("unirep", "SL(2,R) function-space models");
    uni->require_subcommand(1);
    std::string model = "disk", params = "w=0,r=0", method = "auto";
    double us = 2, up = 0, uomega = -13.0 / 4;
    int urange = 32, ucover = 0;
    auto* umat = uni->add_subcommand("matrix", "truncated matrix U_mn of a group element");
    umat->add_option("--model", model, "disk (discrete series) or line (principal series)");
    umat->add_option("--s", us);
    umat->add_option("--p", up);
    umat->add_option("--omega", uomega);
    umat->add_option("--params", params, "w=<complex>,r=<real>");
    umat->add_option("--range", urange);
    umat->add_option("--cover", ucover, "k-fold cover of SL(2,R); 0 for the universal cover");
    umat->add_option("--method", method, "auto | radial | boundary (disk model)");
    auto* uchk = uni->add_subcommand("check", "norms, differential operators and cover phases");
    uchk->add_option("--s", us);
    auto* uchk_omega = uchk->add_option("--omega", uomega, "also check the principal series with this Casimir");

    std::vector<std::string> sections;
    auto* ver = app.add_subcommand("verify-paper", "regression suite of the published examples");
    ver->add_option("--section", sections, "real, alpha11, weights, alpha23, principal, conjecture");

    auto* fig = app.add_subcommand("figures", "root diagram and weight diagrams (SVG and CSV) into --out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        apply_config(app, g);
        validate(g);
        json eff{{"cartan", load_cartan(g.cartan).flag_str()},
                 {"cutoff", g.cutoff},
                 {"window", g.window},
                 {"tol", g.tol},
                 {"format", g.format},
                 {"max_exact_height", g.max_exact_height}};
        for (const auto* sub : app.get_subcommands()) eff["command"] = {{"name", sub->get_name()}, {"args", subcommand_args(sub)}};
        Run run(g, eff);
        const auto& ctx = run.ctx();

        if (*roots) return cmd_roots(run, max_height ? max_height : g.cutoff);
        if (*brk) {
            auto r = ctx.bracket(parse_element(ctx, bx), parse_element(ctx, by));
            run.emit_report({{"x", bx}, {"y", by}, {"bracket", r.str()}}, r.str() + "\n");
            return 0;
        }
        if (*form) {
            auto x = parse_element(ctx, fx), y = parse_element(ctx, fy);
            Q v = invariant ? ctx.invariant_form(x, y) : ctx.contravariant_form(x, y);
            run.emit_report({{"x", fx}, {"y", fy}, {"form", invariant ? "invariant" : "contravariant"}, {"value", to_string(v)}}, to_string(v) + "\n");
            return 0;
        }
        if (*so21) {
            auto t = make_triple(ctx, alpha, word, principal);
            run.emit_report(t.to_json(), t.describe() + "\n");
            return 0;
        }
        if (*dadj) {
            auto t = make_triple(ctx, alpha, word, principal);
            if (t.kind == TripleKind::real) throw std::invalid_argument("real root: use decompose real");
            auto r = decompose_adjoint(t, g.cutoff, g.window);
            run.emit_report(r.to_json(), r.to_text());
            if (!r.diagnostics.empty() || !r.accounting_ok()) throw Diagnostic{"adjoint decomposition has structural diagnostics"};
            return 0;
        }
        if (*dhw) {
            auto t = make_triple(ctx, alpha, word, principal);
            auto lam = parse_highest_weight(lambda, ctx.rank());
            int64_t step = t.kind == TripleKind::principal ? 1 : t.alpha.height();
            WeightTable table(ctx.cartan(), lam, depth * step);
            auto d = decompose_hw(table, t, depth);
            if (g.format == "csv")
                run.emit(table.to_csv());
            else if (g.format == "svg")
                run.emit(table.to_svg("V" + lam.str()));
            else {
                json j = d.to_json();
                j["weights"] = table.to_json();
                run.emit_report(j, d.to_text());
            }
            if (!d.diagnostics.empty()) throw Diagnostic{"highest-weight decomposition has negative differences"};
            return 0;
        }
        if (*dreal) {
            So21Triple t;
            if (simple) {
                if (simple < 1 || static_cast<size_t>(simple) > ctx.rank()) throw std::invalid_argument("--simple out of range");
                t = build_triple_for_root(ctx, RootVector::simple(ctx.rank(), static_cast<size_t>(simple - 1)));
            } else {
                t = make_triple(ctx, alpha, word, false);
            }
            if (t.kind != TripleKind::real) throw std::invalid_argument("decompose real needs a real root");
            auto r = decompose_real_root(t, g.cutoff);
            run.emit_report(r.to_json(), r.to_text());
            for (const auto& s : r.strings)
                if (s.partial) throw Diagnostic{"a string was cut by the cutoff"};
            return 0;
        }
        if (*conj) {
            std::vector<std::pair<RootVector, Word>> list;
            if (conj_alpha_opt->count()) {
                std::stringstream ss(conj_alpha);
                std::string item;
                while (std::getline(ss, item, ';')) {
                    if (item.empty()) continue;
                    RootVector a = parse_root(item);
                    auto b = ctx.root_space_basis(a);
                    if (b.words.empty()) throw std::invalid_argument("(" + a.str() + ") is not a root");
                    list.emplace_back(a, b.words.front());
                }
            } else {
                list = timelike_roots(ctx, conj_height);
            }
            auto r = conjecture_scan(ctx, list, g.cutoff, g.window);
            run.emit_report(r.to_json(), r.to_text());
            if (!r.holds()) throw Diagnostic{"complementary series found"};
            return 0;
        }
        if (*umat) return cmd_unirep_matrix(run, model, us, up, uomega, params, urange, ucover, method);
        if (*uchk) return cmd_unirep_check(run, us, uchk_omega->count() ? std::optional<double>(uomega) : std::nullopt);
        if (*ver) {
            auto secs = sections.empty() ? cli::default_verify_sections() : sections;
            auto checks = cli::run_verify(ctx, secs, g.cutoff, g.window);
            bool ok = std::all_of(checks.begin(), checks.end(), [](const cli::Check& c) { return c.pass; });
            json j{{"sections", secs}, {"checks", cli::checks_json(checks)}, {"ok", ok}};
            std::string text = cli::checks_text(checks);
            if (sections.empty()) text += "(the conjecture scan runs only with --section conjecture)\n";
            run.emit_report(j, text);
            return ok ? 0 : 1;
        }
        if (*fig) return cmd_figures(run);
    } catch (const Diagnostic& d) {
        std::cerr << "diagnostic: " << d.what << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
