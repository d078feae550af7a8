#include "polysinc/problem_file.hpp"

#include <cstddef>
#include <fstream>
#include <sstream>

#include "polysinc/expr.hpp"

namespace polysinc {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string unquote(std::string v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        return v.substr(1, v.size() - 2);
    return v;
}

double parse_number(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ProblemFileError("expected a number, got '" + v + "'", key);
    }
    if (trim(v.substr(pos)) != "")
        throw ProblemFileError("trailing characters after number '" + v + "'", key);
    return out;
}

RealFn compile(const std::string& src, const std::string& key) {
    try {
        expr::Expr e = expr::Expr::parse(src);
        return [e](double x) { return e.eval(x); };
    } catch (const expr::ParseError& err) {
        throw ProblemFileError(std::string("bad expression: ") + err.what() + " at offset " +
                                   std::to_string(err.offset),
                               key);
    }
}

}  // namespace

ParsedProblem parse_problem_text(const std::string& text) {
    ParsedProblem out;
    std::map<std::string, std::string>& kv = out.definition;

    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ProblemFileError("line without '=': '" + line + "'", "");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty()) throw ProblemFileError("empty key", "");
        if (kv.count(key)) throw ProblemFileError("duplicate key", key);
        kv[key] = value;
    }

    static const char* known[] = {"kind", "interval", "a(x)", "b(x)",  "c(x)",
                                  "f(x)", "p(x)",     "q(x)", "ya",    "yb",
                                  "dya",  "multiplier", "exact"};
    for (const auto& [key, value] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ProblemFileError("unknown key", key);
    }

    auto require = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ProblemFileError("missing required key", key);
        return it->second;
    };
    auto fn = [&](const std::string& key) -> RealFn {
        auto it = kv.find(key);
        if (it == kv.end()) return {};
        return compile(it->second, key);
    };

    ProblemSpec& spec = out.spec;
    const std::string kind = require("kind");
    if (kind == "bvp")
        spec.kind = ProblemKind::BVP;
    else if (kind == "ivp1")
        spec.kind = ProblemKind::IVP1;
    else if (kind == "ivp2")
        spec.kind = ProblemKind::IVP2;
    else
        throw ProblemFileError("kind must be bvp, ivp1, or ivp2", "kind");

    {
        const std::string& iv = require("interval");
        std::string body = trim(iv);
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw ProblemFileError("interval must look like [a, b]", "interval");
        body = body.substr(1, body.size() - 2);
        const auto comma = body.find(',');
        if (comma == std::string::npos)
            throw ProblemFileError("interval must look like [a, b]", "interval");
        spec.a = parse_number(trim(body.substr(0, comma)), "interval");
        spec.b = parse_number(trim(body.substr(comma + 1)), "interval");
        if (!(spec.b > spec.a))
            throw ProblemFileError("interval must have a < b", "interval");
    }

    if (spec.kind == ProblemKind::IVP1) {
        spec.p = compile(require("p(x)"), "p(x)");
        spec.q = compile(require("q(x)"), "q(x)");
        spec.ya = parse_number(require("ya"), "ya");
        for (const char* k : {"a(x)", "b(x)", "c(x)", "f(x)", "yb", "dya"})
            if (kv.count(k)) throw ProblemFileError("not valid for kind=ivp1", k);
    } else if (spec.kind == ProblemKind::IVP2) {
        spec.f = compile(require("f(x)"), "f(x)");
        spec.ya = parse_number(require("ya"), "ya");
        spec.dya = parse_number(require("dya"), "dya");
        for (const char* k : {"a(x)", "b(x)", "c(x)", "p(x)", "q(x)", "yb"})
            if (kv.count(k)) throw ProblemFileError("not valid for kind=ivp2", k);
    } else {
        // kind = bvp: -(a y')' + b y' + c y = f
        const std::string& a_src = require("a(x)");
        spec.coef_a = compile(a_src, "a(x)");
        {
            expr::Expr a_expr = expr::Expr::parse(a_src);
            expr::Expr da = a_expr.derivative();
            spec.coef_a_prime = [da](double x) { return da.eval(x); };
        }
        spec.coef_b = fn("b(x)");
        spec.coef_c = fn("c(x)");
        spec.f = compile(require("f(x)"), "f(x)");
        spec.ya = parse_number(require("ya"), "ya");
        spec.yb = parse_number(require("yb"), "yb");
        for (const char* k : {"p(x)", "q(x)", "dya"})
            if (kv.count(k)) throw ProblemFileError("not valid for kind=bvp", k);
    }

    spec.residual_multiplier = fn("multiplier");
    spec.exact = fn("exact");
    return out;
}

ParsedProblem load_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProblemFileError("cannot open file '" + path + "'", "");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

}  // namespace polysinc
