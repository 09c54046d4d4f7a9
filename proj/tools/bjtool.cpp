// bjtool: file-driven Birkhoff-James orthogonality checks and the
// verification experiment runner.
//
// Exit status contract: 0 success / assertion match, 1 assertion mismatch or
// experiment failure, 2 inconclusive under an assertion, 3 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "bjo/bj.hpp"
#include "bjo/spaces.hpp"
#include "bjo/tensor.hpp"
#include "bjo/verify.hpp"

using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LineCol {
    std::size_t line = 1, col = 1;
};

LineCol locate(const std::string& text, std::size_t byte) {
    LineCol lc;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++lc.line;
            lc.col = 1;
        } else {
            ++lc.col;
        }
    }
    return lc;
}

// Best-effort position of a key token in the raw text, for unknown-field
// diagnostics. Parse errors get the exact byte offset from the parser.
std::string key_position(const std::string& text, const std::string& key) {
    std::size_t at = text.find("\"" + key + "\"");
    if (at == std::string::npos) return "";
    LineCol lc = locate(text, at);
    std::ostringstream os;
    os << " at line " << lc.line << ", column " << lc.col;
    return os.str();
}

void require_keys(const json& obj, const std::string& where, const std::string& text,
                  const std::set<std::string>& required, const std::set<std::string>& optional) {
    if (!obj.is_object()) throw InputError(where + ": expected an object");
    for (const auto& [k, v] : obj.items()) {
        (void)v;
        if (!required.count(k) && !optional.count(k))
            throw InputError(where + ": unknown field \"" + k + "\"" + key_position(text, k));
    }
    for (const std::string& k : required)
        if (!obj.contains(k))
            throw InputError(where + ": missing field \"" + k + "\"");
}

bjo::Cx parse_scalar(const json& v, const std::string& where, bjo::Field field) {
    bjo::Cx z;
    if (v.is_number()) {
        z = bjo::Cx(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        z = bjo::Cx(v[0].get<double>(), v[1].get<double>());
    } else {
        throw InputError(where + ": expected a number or [re, im]");
    }
    if (field == bjo::Field::Real && z.imag() != 0.0)
        throw InputError(where + ": nonzero imaginary part in a real-field problem");
    return z;
}

std::vector<bjo::Cx> parse_values(const json& v, const std::string& where, bjo::Field field) {
    if (!v.is_array() || v.empty()) throw InputError(where + ": expected a nonempty array");
    std::vector<bjo::Cx> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_scalar(v[i], where + "[" + std::to_string(i) + "]", field));
    return out;
}

struct SpaceSpec {
    std::string kind;  // sup | lp | matrix | hilbert
    double p = 2.0;
    std::vector<double> weights;  // optional, lp only
};

struct Problem {
    bjo::Field field = bjo::Field::Complex;
    SpaceSpec space;
    std::string mode;  // bj | sbj | tensor-bj
    json operands;
    bjo::Tolerances tol;
    std::string text;  // raw file text, for diagnostics
};

SpaceSpec parse_space(const json& s, const std::string& text) {
    require_keys(s, "space", text, {"kind"}, {"p", "weights"});
    SpaceSpec spec;
    spec.kind = s.at("kind").get<std::string>();
    if (spec.kind != "sup" && spec.kind != "lp" && spec.kind != "matrix" &&
        spec.kind != "hilbert")
        throw InputError("space.kind: expected sup, lp, matrix, or hilbert");
    if (spec.kind == "lp") {
        if (!s.contains("p")) throw InputError("space: lp requires \"p\"");
        spec.p = s.at("p").get<double>();
        if (!(spec.p > 1.0) || !std::isfinite(spec.p))
            throw InputError("space.p: expected a finite exponent > 1");
    } else if (s.contains("p")) {
        throw InputError("space.p: only valid for kind lp");
    }
    if (s.contains("weights")) {
        if (spec.kind != "lp") throw InputError("space.weights: only valid for kind lp");
        for (const auto& w : s.at("weights")) {
            double x = w.get<double>();
            if (!(x > 0.0)) throw InputError("space.weights: weights must be positive");
            spec.weights.push_back(x);
        }
    }
    return spec;
}

Problem parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    Problem prob;
    prob.text = buf.str();

    json doc;
    try {
        doc = json::parse(prob.text);
    } catch (const json::parse_error& e) {
        LineCol lc = locate(prob.text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream os;
        os << "parse error at line " << lc.line << ", column " << lc.col << ": " << e.what();
        throw InputError(os.str());
    }

    require_keys(doc, "problem", prob.text, {"version", "field", "space", "mode", "operands"},
                 {"tolerances"});
    if (doc.at("version").get<int>() != 1) throw InputError("version: expected 1");
    std::string field = doc.at("field").get<std::string>();
    if (field == "real")
        prob.field = bjo::Field::Real;
    else if (field == "complex")
        prob.field = bjo::Field::Complex;
    else
        throw InputError("field: expected \"real\" or \"complex\"");
    prob.space = parse_space(doc.at("space"), prob.text);
    prob.mode = doc.at("mode").get<std::string>();
    if (prob.mode != "bj" && prob.mode != "sbj" && prob.mode != "tensor-bj")
        throw InputError("mode: expected bj, sbj, or tensor-bj");
    prob.operands = doc.at("operands");
    if (!prob.operands.is_array() || prob.operands.size() != 2)
        throw InputError("operands: expected exactly two elements");
    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        require_keys(t, "tolerances", prob.text, {}, {"tol_eq", "tol_decision"});
        if (t.contains("tol_eq")) prob.tol.tol_eq = t.at("tol_eq").get<double>();
        if (t.contains("tol_decision")) prob.tol.tol_decision = t.at("tol_decision").get<double>();
    }
    return prob;
}

bjo::FiniteFunction parse_function(const json& e, const std::string& where, const Problem& prob,
                                   bool allow_local_weights) {
    require_keys(e, where, prob.text, {"values"},
                 allow_local_weights ? std::set<std::string>{"weights"} : std::set<std::string>{});
    std::vector<bjo::Cx> vals = parse_values(e.at("values"), where + ".values", prob.field);
    if (prob.space.kind == "sup") return bjo::FiniteFunction::sup(prob.field, std::move(vals));
    double p = prob.space.kind == "hilbert" ? 2.0 : prob.space.p;
    std::vector<double> w = prob.space.weights;
    if (e.contains("weights")) {
        w.clear();
        for (const auto& x : e.at("weights")) w.push_back(x.get<double>());
    }
    if (!w.empty() && w.size() != vals.size())
        throw InputError(where + ": weights length mismatch");
    return bjo::FiniteFunction::lp(prob.field, std::move(vals), p, std::move(w));
}

bjo::MatrixOperator parse_matrix(const json& e, const std::string& where, const Problem& prob) {
    require_keys(e, where, prob.text, {"rows"}, {});
    const json& rows = e.at("rows");
    if (!rows.is_array() || rows.empty()) throw InputError(where + ".rows: expected rows");
    std::vector<std::vector<bjo::Cx>> r;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        r.push_back(parse_values(rows[i], where + ".rows[" + std::to_string(i) + "]", prob.field));
        if (r.back().size() != r[0].size())
            throw InputError(where + ".rows: ragged rows");
    }
    return bjo::MatrixOperator::from_rows(prob.field, r);
}

json cx_json(bjo::Cx z) { return json::array({z.real(), z.imag()}); }

json certificate_json(const bjo::Certificate& c) {
    json out;
    if (const auto* a = std::get_if<bjo::ArgminCertificate>(&c)) {
        out["type"] = "argmin";
        out["alpha_star"] = cx_json(a->alpha_star);
        out["achieved_norm"] = a->achieved_norm;
    } else if (const auto* f = std::get_if<bjo::FunctionalCertificate>(&c)) {
        out["type"] = "functional";
        json phi = json::array();
        for (bjo::Cx z : f->phi) phi.push_back(cx_json(z));
        out["phi"] = phi;
    } else if (const auto* p = std::get_if<bjo::PointCertificate>(&c)) {
        out["type"] = "point";
        out["indices"] = p->indices;
    } else if (const auto* h = std::get_if<bjo::HullCertificate>(&c)) {
        out["type"] = "hull";
        json pts = json::array();
        for (bjo::Cx z : h->support_points) pts.push_back(cx_json(z));
        out["support_points"] = pts;
        out["support_indices"] = h->support_indices;
        out["weights"] = h->weights;
    } else if (const auto* w = std::get_if<bjo::WitnessVectorCertificate>(&c)) {
        out["type"] = "witness";
        json x = json::array();
        for (bjo::Cx z : w->x) x.push_back(cx_json(z));
        out["x"] = x;
    } else {
        out["type"] = "none";
    }
    return out;
}

std::string certificate_text(const bjo::Certificate& c) {
    std::ostringstream os;
    os.precision(12);
    if (const auto* a = std::get_if<bjo::ArgminCertificate>(&c)) {
        os << "argmin alpha* = " << a->alpha_star.real();
        if (a->alpha_star.imag() != 0.0) os << " + " << a->alpha_star.imag() << "i";
        os << ", achieved norm " << a->achieved_norm;
    } else if (const auto* f = std::get_if<bjo::FunctionalCertificate>(&c)) {
        os << "functional, " << f->phi.size() << " coefficients";
    } else if (const auto* p = std::get_if<bjo::PointCertificate>(&c)) {
        os << "points";
        for (std::size_t i : p->indices) os << " " << i;
    } else if (const auto* h = std::get_if<bjo::HullCertificate>(&c)) {
        os << "hull support";
        for (std::size_t i = 0; i < h->support_points.size(); ++i)
            os << " (" << h->support_points[i].real() << ", " << h->support_points[i].imag()
               << ")*" << h->weights[i];
    } else if (const auto* w = std::get_if<bjo::WitnessVectorCertificate>(&c)) {
        os << "witness vector";
        for (bjo::Cx z : w->x) os << " (" << z.real() << ", " << z.imag() << ")";
    } else {
        os << "none";
    }
    return os.str();
}

bjo::Verdict solve(const Problem& prob) {
    const json& a = prob.operands[0];
    const json& b = prob.operands[1];
    if (prob.mode == "tensor-bj") {
        if (prob.space.kind == "matrix") {
            auto parse_terms = [&](const json& e, const std::string& where) {
                require_keys(e, where, prob.text, {"terms"}, {});
                bjo::MatrixTensorElement u;
                std::size_t i = 0;
                for (const auto& t : e.at("terms")) {
                    std::string tw = where + ".terms[" + std::to_string(i++) + "]";
                    require_keys(t, tw, prob.text, {"x", "y"}, {"coeff"});
                    bjo::Cx coeff = t.contains("coeff")
                                        ? parse_scalar(t.at("coeff"), tw + ".coeff", prob.field)
                                        : bjo::Cx(1.0);
                    u.terms.push_back({coeff, parse_matrix(t.at("x"), tw + ".x", prob),
                                       parse_matrix(t.at("y"), tw + ".y", prob)});
                }
                if (u.terms.empty()) throw InputError(where + ".terms: expected terms");
                return u;
            };
            bjo::MatrixOperator m1 = bjo::materialize(parse_terms(a, "operands[0]"));
            bjo::MatrixOperator m2 = bjo::materialize(parse_terms(b, "operands[1]"));
            return bjo::bj_matrix(m1, m2, prob.tol);
        }
        bjo::NormKind kind = prob.space.kind == "sup" ? bjo::NormKind::InjectiveExact
                                                      : bjo::NormKind::DeltaP;
        auto parse_terms = [&](const json& e, const std::string& where) {
            require_keys(e, where, prob.text, {"terms"}, {});
            bjo::TensorElement u;
            u.kind = kind;
            std::size_t i = 0;
            for (const auto& t : e.at("terms")) {
                std::string tw = where + ".terms[" + std::to_string(i++) + "]";
                require_keys(t, tw, prob.text, {"x", "y"}, {"coeff"});
                bjo::Cx coeff = t.contains("coeff")
                                    ? parse_scalar(t.at("coeff"), tw + ".coeff", prob.field)
                                    : bjo::Cx(1.0);
                u.terms.push_back({coeff, parse_function(t.at("x"), tw + ".x", prob, true),
                                   parse_function(t.at("y"), tw + ".y", prob, true)});
            }
            if (u.terms.empty()) throw InputError(where + ".terms: expected terms");
            return u;
        };
        bjo::TensorElement u1 = parse_terms(a, "operands[0]");
        bjo::TensorElement u2 = parse_terms(b, "operands[1]");
        // the identifications are exact for these two norms, so decide in the
        // identified space with its dedicated criterion
        if (kind == bjo::NormKind::DeltaP)
            return bjo::bj_lp(bjo::lp_identify(u1), bjo::lp_identify(u2), prob.tol);
        bjo::FiniteFunction h1 = bjo::ck_identify(u1);
        bjo::FiniteFunction h2 = bjo::ck_identify(u2);
        if (h2.is_zero()) return bjo::bj_generic(h1, h2, prob.tol);
        return prob.field == bjo::Field::Complex ? bjo::bj_ck_complex(h1, h2, 1e-9, prob.tol)
                                                 : bjo::bj_ck_real(h1, h2, 1e-9, prob.tol);
    }
    if (prob.space.kind == "matrix") {
        if (prob.mode == "sbj") throw InputError("mode sbj requires a sup-norm space");
        return bjo::bj_matrix(parse_matrix(a, "operands[0]", prob),
                              parse_matrix(b, "operands[1]", prob), prob.tol);
    }
    bjo::FiniteFunction x = parse_function(a, "operands[0]", prob, false);
    bjo::FiniteFunction y = parse_function(b, "operands[1]", prob, false);
    if (x.size() != y.size()) throw InputError("operands: size mismatch");
    if (y.is_zero() && prob.mode == "bj") return bjo::bj_generic(x, y, prob.tol);
    if (prob.mode == "sbj") {
        if (prob.space.kind != "sup") throw InputError("mode sbj requires a sup-norm space");
        return bjo::sbj_ck(x, y, 1e-9, prob.tol);
    }
    if (prob.space.kind == "sup")
        return prob.field == bjo::Field::Complex ? bjo::bj_ck_complex(x, y, 1e-9, prob.tol)
                                                 : bjo::bj_ck_real(x, y, 1e-9, prob.tol);
    return bjo::bj_lp(x, y, prob.tol);
}

void print_verdict(const bjo::Verdict& v, const std::string& format, bool cert_json) {
    if (format == "kv") {
        std::printf("decision=%s\nmargin=%.17g\n", bjo::decision_name(v.decision), v.margin);
        for (const auto& [k, val] : v.tolerances_used) std::printf("%s=%.17g\n", k.c_str(), val);
        if (cert_json)
            std::printf("certificate=%s\n", certificate_json(v.certificate).dump().c_str());
        else
            std::printf("certificate=%s\n", certificate_text(v.certificate).c_str());
        return;
    }
    std::printf("decision: %s\nmargin: %.12g\n", bjo::decision_name(v.decision), v.margin);
    for (const auto& [k, val] : v.tolerances_used) std::printf("%s: %.12g\n", k.c_str(), val);
    if (cert_json)
        std::printf("certificate: %s\n", certificate_json(v.certificate).dump(2).c_str());
    else
        std::printf("certificate: %s\n", certificate_text(v.certificate).c_str());
}

int cmd_check(const std::string& path, bool assert_orth, bool assert_not,
              const std::string& cert_format, const std::string& format) {
    bjo::Verdict v;
    try {
        v = solve(parse_problem(path));
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const bjo::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    print_verdict(v, format, cert_format == "json");
    if (!assert_orth && !assert_not) return 0;
    if (v.decision == bjo::Decision::Inconclusive) return 2;
    const bool is_orth = v.decision == bjo::Decision::Orthogonal;
    return is_orth == assert_orth ? 0 : 1;
}

int cmd_verify(const std::string& filter, std::uint64_t seed, int trials, bool serial,
               const std::string& format) {
    bjo::RunOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    opts.parallel = !serial;
    bool matched = false, all_ok = true;
    for (const auto& def : bjo::experiment_registry()) {
        if (!filter.empty() && def.name != filter) continue;
        matched = true;
        bjo::ExperimentReport rep = def.run(opts);
        std::fputs((format == "kv" ? bjo::report_kv(rep) : bjo::report_text(rep)).c_str(),
                   stdout);
        all_ok = all_ok && rep.ok();
    }
    if (!matched) {
        std::fprintf(stderr, "error: unknown experiment \"%s\"\n", filter.c_str());
        return 3;
    }
    return all_ok ? 0 : 1;
}

int cmd_examples(const std::string& format) {
    bool all_ok = true;
    bjo::RunOptions opts;  // defaults; the example experiments are fixture-only
    const char* names[] = {"example2", "example3", "matrix_examples", "shift_truncation"};
    for (const char* name : names) {
        for (const auto& def : bjo::experiment_registry()) {
            if (def.name != name) continue;
            bjo::ExperimentReport rep = def.run(opts);
            if (format == "kv") {
                std::fputs(bjo::report_kv(rep).c_str(), stdout);
            } else {
                std::printf("%s\n", rep.name.c_str());
                for (const auto& f : rep.fixtures)
                    std::printf("  %-44s expected %-24s observed %-24s %s\n", f.label.c_str(),
                                f.expected.c_str(), f.observed.c_str(), f.pass ? "ok" : "FAIL");
            }
            all_ok = all_ok && rep.ok();
        }
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birkhoff-James orthogonality verdict tool"};
    app.require_subcommand(1);

    std::string path, filter, format = "text", cert_format = "text";
    bool assert_orth = false, assert_not = false, serial = false;
    std::uint64_t seed = 42;
    int trials = -1;

    CLI::App* check = app.add_subcommand("check", "decide a problem file");
    check->add_option("file", path, "problem file")->required();
    check->add_flag("--assert-orthogonal", assert_orth, "exit 0 iff orthogonal");
    check->add_flag("--assert-not", assert_not, "exit 0 iff not orthogonal");
    check->add_option("--certificate", cert_format, "certificate format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    check->add_option("--format", format, "report format: text|kv")
        ->check(CLI::IsMember({"text", "kv"}));

    CLI::App* verify = app.add_subcommand("verify", "run verification experiments");
    verify->add_option("--filter", filter, "run a single experiment by name");
    verify->add_option("--seed", seed, "base seed");
    verify->add_option("--trials", trials, "trial count override (-1: defaults)");
    verify->add_flag("--serial", serial, "use the serial reference runner");
    verify->add_option("--format", format, "report format: text|kv")
        ->check(CLI::IsMember({"text", "kv"}));

    CLI::App* examples = app.add_subcommand("examples", "reproduce the worked examples");
    examples->add_option("--format", format, "report format: text|kv")
        ->check(CLI::IsMember({"text", "kv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    if (check->parsed()) {
        if (assert_orth && assert_not) {
            std::fprintf(stderr, "error: --assert-orthogonal and --assert-not conflict\n");
            return 3;
        }
        return cmd_check(path, assert_orth, assert_not, cert_format, format);
    }
    if (verify->parsed()) return cmd_verify(filter, seed, trials, serial, format);
    return cmd_examples(format);
}
