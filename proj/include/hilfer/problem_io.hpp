// Problem-file ingestion and canonical emission. Two equivalent encodings are
// accepted: a sectioned key = value text (the format the writer emits) and a
// JSON mirror with the same section and key layout. Syntax failures raise
// ParseError with a 1-based line number; structurally valid files whose
// contents break an invariant raise ValidationError naming the offending
// field, e.g. "nonlocal.anchors". Parsing applies the documented numerics
// defaults, so a minimal file needs only orders, generator, horizon, initial.
#pragma once

#include <hilfer/errors.hpp>
#include <hilfer/problem.hpp>

#include <Eigen/Dense>
#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hilfer {

struct NumericsConfig {
    std::size_t grid_n = 512;
    double tol = 1e-8;
    std::size_t max_iter = 64;
    double ml_tol = 1e-12;
    std::uint64_t seed = 42;
};

struct ProblemConfig {
    Problem problem;
    NumericsConfig numerics;
};

namespace detail {

// Shortest decimal form that parses back to exactly x.
inline std::string format_number(double x) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

inline std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return !std::isdigit(static_cast<unsigned char>(s.front()));
}

inline long bracket_depth(const std::string& s) {
    long depth = 0;
    bool quoted = false;
    for (char c : s) {
        if (c == '"') quoted = !quoted;
        else if (c == '[' && !quoted) ++depth;
        else if (c == ']' && !quoted) --depth;
    }
    return depth;
}

struct ValueCursor {
    const std::string& s;
    std::size_t i;
    std::size_t line;
};

inline void skip_spaces(ValueCursor& c) {
    while (c.i < c.s.size() && std::isspace(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
}

inline nlohmann::json parse_scalar(ValueCursor& c) {
    const std::size_t start = c.i;
    while (c.i < c.s.size() && c.s[c.i] != ',' && c.s[c.i] != ']' &&
           !std::isspace(static_cast<unsigned char>(c.s[c.i])))
        ++c.i;
    const std::string tok = c.s.substr(start, c.i - start);
    if (tok.empty()) throw ParseError("missing value", c.line);

    bool integral = true;
    for (std::size_t k = 0; k < tok.size(); ++k) {
        const char ch = tok[k];
        if (k == 0 && (ch == '+' || ch == '-')) continue;
        if (!std::isdigit(static_cast<unsigned char>(ch))) { integral = false; break; }
    }
    if (integral && tok != "+" && tok != "-") {
        errno = 0;
        char* end = nullptr;
        if (tok.front() == '-') {
            const long long v = std::strtoll(tok.c_str(), &end, 10);
            if (errno == 0 && end && *end == '\0') return nlohmann::json(v);
        } else {
            const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
            if (errno == 0 && end && *end == '\0') return nlohmann::json(v);
        }
    }
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == nullptr || *end != '\0')
        throw ParseError("malformed number '" + tok + "'", c.line);
    return nlohmann::json(v);
}

inline nlohmann::json parse_value(ValueCursor& c) {
    skip_spaces(c);
    if (c.i >= c.s.size()) throw ParseError("missing value", c.line);
    const char ch = c.s[c.i];
    if (ch == '[') {
        ++c.i;
        nlohmann::json arr = nlohmann::json::array();
        for (;;) {
            skip_spaces(c);
            if (c.i >= c.s.size()) throw ParseError("unterminated array", c.line);
            if (c.s[c.i] == ']') { ++c.i; return arr; }
            arr.push_back(parse_value(c));
            skip_spaces(c);
            if (c.i >= c.s.size()) throw ParseError("unterminated array", c.line);
            if (c.s[c.i] == ',') { ++c.i; continue; }
            if (c.s[c.i] == ']') { ++c.i; return arr; }
            throw ParseError("expected ',' or ']' in array", c.line);
        }
    }
    if (ch == '"') {
        const std::size_t close = c.s.find('"', c.i + 1);
        if (close == std::string::npos) throw ParseError("unterminated string", c.line);
        nlohmann::json v = c.s.substr(c.i + 1, close - c.i - 1);
        c.i = close + 1;
        return v;
    }
    return parse_scalar(c);
}

// Sectioned key = value text -> {section: {key: value}}. Values are numbers,
// quoted strings, or (nested) arrays; an array may continue across lines
// until its brackets balance. '#' starts a comment outside strings.
inline nlohmann::json toml_to_json(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    std::istringstream in(text);
    std::string raw, section;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;

        if (s.front() == '[' && s.back() == ']' && is_identifier(trim(s.substr(1, s.size() - 2)))) {
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (root.contains(name))
                throw ParseError("duplicate section [" + name + "]", line_no);
            root[name] = nlohmann::json::object();
            section = name;
            continue;
        }

        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value' or '[section]'", line_no);
        const std::string key = trim(s.substr(0, eq));
        if (!is_identifier(key))
            throw ParseError("malformed key '" + key + "'", line_no);
        if (section.empty())
            throw ParseError("key '" + key + "' appears before any [section]", line_no);

        std::string val = trim(s.substr(eq + 1));
        const std::size_t value_line = line_no;
        while (bracket_depth(val) > 0) {
            if (!std::getline(in, raw)) throw ParseError("unterminated array", value_line);
            ++line_no;
            val += " " + trim(strip_comment(raw));
        }
        if (bracket_depth(val) < 0)
            throw ParseError("unbalanced ']'", value_line);
        if (root[section].contains(key))
            throw ParseError("duplicate key '" + key + "' in [" + section + "]", value_line);

        ValueCursor c{val, 0, value_line};
        nlohmann::json v = parse_value(c);
        skip_spaces(c);
        if (c.i != val.size())
            throw ParseError("trailing characters after value", value_line);
        root[section][key] = std::move(v);
    }
    return root;
}

inline std::string join_field(const char* sec, const std::string& key) {
    return std::string(sec) + "." + key;
}

inline const nlohmann::json& need_section(const nlohmann::json& root, const char* name) {
    auto it = root.find(name);
    if (it == root.end()) throw ValidationError(name, "missing required section");
    if (!it->is_object()) throw ValidationError(name, "section must be a table");
    return *it;
}

inline void check_keys(const nlohmann::json& sec, const char* name,
                       std::initializer_list<const char*> allowed) {
    for (const auto& item : sec.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) { ok = true; break; }
        if (!ok) throw ValidationError(join_field(name, item.key()), "unrecognized key");
    }
}

inline const nlohmann::json& need_value(const nlohmann::json& sec, const char* name,
                                        const char* key) {
    auto it = sec.find(key);
    if (it == sec.end())
        throw ValidationError(join_field(name, key), "missing required key");
    return *it;
}

inline double need_number(const nlohmann::json& sec, const char* name, const char* key) {
    const auto& v = need_value(sec, name, key);
    if (!v.is_number()) throw ValidationError(join_field(name, key), "expected a number");
    return v.get<double>();
}

inline double opt_number(const nlohmann::json& sec, const char* name, const char* key,
                         double dflt) {
    return sec.contains(key) ? need_number(sec, name, key) : dflt;
}

inline std::uint64_t opt_unsigned(const nlohmann::json& sec, const char* name,
                                  const char* key, std::uint64_t dflt) {
    if (!sec.contains(key)) return dflt;
    const auto& v = sec.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ValidationError(join_field(name, key), "expected a nonnegative integer");
}

inline std::string need_string(const nlohmann::json& sec, const char* name, const char* key) {
    const auto& v = need_value(sec, name, key);
    if (!v.is_string())
        throw ValidationError(join_field(name, key), "expected a quoted string");
    return v.get<std::string>();
}

inline Eigen::VectorXd as_vector(const nlohmann::json& v, const std::string& field) {
    if (!v.is_array() || v.empty())
        throw ValidationError(field, "expected a nonempty array of numbers");
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ValidationError(field, "expected a nonempty array of numbers");
        out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
    }
    return out;
}

inline Eigen::MatrixXd as_matrix(const nlohmann::json& v, const std::string& field) {
    if (!v.is_array() || v.empty())
        throw ValidationError(field, "expected a nonempty array of rows");
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    Eigen::MatrixXd out;
    for (std::size_t r = 0; r < rows; ++r) {
        const Eigen::VectorXd row = as_vector(v[r], field);
        if (r == 0) {
            cols = static_cast<std::size_t>(row.size());
            out.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        } else if (static_cast<std::size_t>(row.size()) != cols) {
            throw ValidationError(field, "rows must have equal length");
        }
        out.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return out;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

inline NonlinSpec build_nonlin(const nlohmann::json& sec) {
    check_keys(sec, "nonlinearity", {"kind", "matrix", "kappa", "coeffs", "nodes", "values"});
    const std::string kind = need_string(sec, "nonlinearity", "kind");
    try {
        if (kind == "zero") return NonlinSpec::zero();
        if (kind == "linear")
            return NonlinSpec::linear(
                as_matrix(need_value(sec, "nonlinearity", "matrix"), "nonlinearity.matrix"));
        if (kind == "sine")
            return NonlinSpec::sine(need_number(sec, "nonlinearity", "kappa"));
        if (kind == "polynomial")
            return NonlinSpec::polynomial(to_std(
                as_vector(need_value(sec, "nonlinearity", "coeffs"), "nonlinearity.coeffs")));
        if (kind == "tabulated") {
            const Eigen::VectorXd nodes =
                as_vector(need_value(sec, "nonlinearity", "nodes"), "nonlinearity.nodes");
            const auto& rows = need_value(sec, "nonlinearity", "values");
            if (!rows.is_array() || rows.size() != static_cast<std::size_t>(nodes.size()))
                throw ValidationError("nonlinearity.values", "one row per node required");
            SampledFn table;
            table.grid = Grid::from_nodes(to_std(nodes));
            table.values.reserve(rows.size());
            for (const auto& row : rows)
                table.values.push_back(as_vector(row, "nonlinearity.values"));
            return NonlinSpec::tabulated(std::move(table));
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const InputError& e) {
        throw ValidationError("nonlinearity", e.what());
    }
    throw ValidationError("nonlinearity.kind", "unknown kind '" + kind + "'");
}

inline DelaySpec build_delay(const nlohmann::json& sec) {
    check_keys(sec, "delay", {"kind", "q", "tau", "ts", "sigmas"});
    const std::string kind = need_string(sec, "delay", "kind");
    try {
        if (kind == "identity") return DelaySpec::identity();
        if (kind == "proportional")
            return DelaySpec::proportional(need_number(sec, "delay", "q"));
        if (kind == "lag") return DelaySpec::lag(need_number(sec, "delay", "tau"));
        if (kind == "tabulated")
            return DelaySpec::tabulated(
                to_std(as_vector(need_value(sec, "delay", "ts"), "delay.ts")),
                to_std(as_vector(need_value(sec, "delay", "sigmas"), "delay.sigmas")));
    } catch (const ValidationError&) {
        throw;
    } catch (const InputError& e) {
        throw ValidationError("delay", e.what());
    }
    throw ValidationError("delay.kind", "unknown kind '" + kind + "'");
}

inline NonlocalSpec build_nonlocal(const nlohmann::json& sec, const Problem& p) {
    check_keys(sec, "nonlocal", {"anchors", "coefficients"});
    const auto& anchors_v = need_value(sec, "nonlocal", "anchors");
    const auto& coeffs_v = need_value(sec, "nonlocal", "coefficients");
    if (anchors_v.is_array() && anchors_v.empty() && coeffs_v.is_array() && coeffs_v.empty())
        return NonlocalSpec::none();

    const Eigen::VectorXd anchors = as_vector(anchors_v, "nonlocal.anchors");
    if (!coeffs_v.is_array() || coeffs_v.size() != static_cast<std::size_t>(anchors.size()))
        throw ValidationError("nonlocal.coefficients", "one coefficient per anchor required");

    const double eps = 1e-9 * std::max(1.0, std::fabs(p.t0) + p.a);
    double prev = p.t0;
    for (Eigen::Index k = 0; k < anchors.size(); ++k) {
        if (!(anchors(k) > prev) || !(anchors(k) <= p.t0 + p.a + eps))
            throw ValidationError("nonlocal.anchors",
                                  "anchors must increase strictly and lie in (t0, t0 + a]");
        prev = anchors(k);
    }

    std::vector<Eigen::MatrixXd> coeffs;
    coeffs.reserve(coeffs_v.size());
    for (const auto& m : coeffs_v) {
        Eigen::MatrixXd c = as_matrix(m, "nonlocal.coefficients");
        if (c.rows() != p.gen.dim() || c.cols() != p.gen.dim())
            throw ValidationError("nonlocal.coefficients",
                                  "each coefficient must match the generator dimension");
        coeffs.push_back(std::move(c));
    }
    return NonlocalSpec::of(to_std(anchors), std::move(coeffs));
}

inline ProblemConfig build_config(const nlohmann::json& root) {
    if (!root.is_object())
        throw ValidationError("document", "top level must be a table of sections");
    for (const auto& item : root.items()) {
        static const char* known[] = {"orders",       "generator", "horizon",
                                      "initial",      "nonlinearity", "delay",
                                      "nonlocal",     "numerics"};
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) { ok = true; break; }
        if (!ok) throw ValidationError(item.key(), "unrecognized section");
    }

    ProblemConfig cfg;
    Problem& p = cfg.problem;

    const auto& orders = need_section(root, "orders");
    check_keys(orders, "orders", {"alpha", "beta"});
    p.alpha = need_number(orders, "orders", "alpha");
    p.beta = need_number(orders, "orders", "beta");

    const auto& gen = need_section(root, "generator");
    check_keys(gen, "generator", {"matrix"});
    p.gen.A = as_matrix(need_value(gen, "generator", "matrix"), "generator.matrix");
    if (p.gen.A.rows() != p.gen.A.cols())
        throw ValidationError("generator.matrix", "matrix must be square");

    const auto& horizon = need_section(root, "horizon");
    check_keys(horizon, "horizon", {"t0", "a"});
    p.t0 = need_number(horizon, "horizon", "t0");
    p.a = need_number(horizon, "horizon", "a");
    if (!(p.a > 0.0)) throw ValidationError("horizon.a", "horizon length must be positive");

    const auto& initial = need_section(root, "initial");
    check_keys(initial, "initial", {"xi0", "ball_radius"});
    p.xi0 = as_vector(need_value(initial, "initial", "xi0"), "initial.xi0");
    if (p.xi0.size() != p.gen.dim())
        throw ValidationError("initial.xi0", "dimension must match the generator");
    p.ball_radius = opt_number(initial, "initial", "ball_radius", 1.0);
    if (!(p.ball_radius > 0.0))
        throw ValidationError("initial.ball_radius", "ball radius must be positive");

    if (auto it = root.find("nonlinearity"); it != root.end()) {
        if (!it->is_object()) throw ValidationError("nonlinearity", "section must be a table");
        p.nonlin = build_nonlin(*it);
    }
    if (auto it = root.find("delay"); it != root.end()) {
        if (!it->is_object()) throw ValidationError("delay", "section must be a table");
        p.delay = build_delay(*it);
    }
    if (auto it = root.find("nonlocal"); it != root.end()) {
        if (!it->is_object()) throw ValidationError("nonlocal", "section must be a table");
        p.nonlocal = build_nonlocal(*it, p);
    }

    if (auto it = root.find("numerics"); it != root.end()) {
        if (!it->is_object()) throw ValidationError("numerics", "section must be a table");
        check_keys(*it, "numerics", {"grid_n", "tol", "max_iter", "ml_tol", "seed"});
        NumericsConfig& n = cfg.numerics;
        n.grid_n = static_cast<std::size_t>(opt_unsigned(*it, "numerics", "grid_n", n.grid_n));
        if (n.grid_n < 2) throw ValidationError("numerics.grid_n", "needs at least 2 cells");
        n.tol = opt_number(*it, "numerics", "tol", n.tol);
        if (!(n.tol > 0.0)) throw ValidationError("numerics.tol", "must be positive");
        n.max_iter = static_cast<std::size_t>(opt_unsigned(*it, "numerics", "max_iter", n.max_iter));
        if (n.max_iter < 1) throw ValidationError("numerics.max_iter", "must be at least 1");
        n.ml_tol = opt_number(*it, "numerics", "ml_tol", n.ml_tol);
        if (!(n.ml_tol > 0.0)) throw ValidationError("numerics.ml_tol", "must be positive");
        n.seed = opt_unsigned(*it, "numerics", "seed", n.seed);
    }

    try {
        p.validate();
    } catch (const InputError& e) {
        throw ValidationError("problem", e.what());
    }
    return cfg;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParams("cannot write file '" + path + "'");
    out << text;
    if (!out) throw InvalidParams("cannot write file '" + path + "'");
}

inline void emit_vector(std::string& out, const Eigen::VectorXd& v) {
    out += "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_number(v(i));
    }
    out += "]";
}

inline void emit_matrix(std::string& out, const Eigen::MatrixXd& m) {
    out += "[";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r) out += ", ";
        emit_vector(out, m.row(r).transpose());
    }
    out += "]";
}

inline void emit_double_list(std::string& out, const std::vector<double>& v) {
    out += "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_number(v[i]);
    }
    out += "]";
}

}  // namespace detail

/// Parse problem text in the sectioned key = value format.
inline ProblemConfig read_problem_text(const std::string& text) {
    return detail::build_config(detail::toml_to_json(text));
}

/// Parse the JSON mirror of the problem format.
inline ProblemConfig read_problem_json_text(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    return detail::build_config(root);
}

/// Read a problem file; the ".json" extension selects the JSON reader.
inline ProblemConfig read_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return json ? read_problem_json_text(buf.str()) : read_problem_text(buf.str());
}

inline Problem parse_problem(const std::string& path) {
    return read_problem_file(path).problem;
}

/// Canonical text form; read_problem_text is an exact inverse, and the
/// composition write -> read -> write is a fixed point of the text.
inline std::string problem_to_text(const ProblemConfig& cfg) {
    using detail::format_number;
    const Problem& p = cfg.problem;
    std::string out;

    out += "[orders]\n";
    out += "alpha = " + format_number(p.alpha) + "\n";
    out += "beta = " + format_number(p.beta) + "\n";

    out += "\n[generator]\n";
    out += "matrix = ";
    detail::emit_matrix(out, p.gen.A);
    out += "\n";

    out += "\n[horizon]\n";
    out += "t0 = " + format_number(p.t0) + "\n";
    out += "a = " + format_number(p.a) + "\n";

    out += "\n[initial]\n";
    out += "xi0 = ";
    detail::emit_vector(out, p.xi0);
    out += "\n";
    out += "ball_radius = " + format_number(p.ball_radius) + "\n";

    out += "\n[nonlinearity]\n";
    switch (p.nonlin.kind) {
        case NonlinSpec::Kind::zero:
            out += "kind = \"zero\"\n";
            break;
        case NonlinSpec::Kind::linear:
            out += "kind = \"linear\"\n";
            out += "matrix = ";
            detail::emit_matrix(out, p.nonlin.L);
            out += "\n";
            break;
        case NonlinSpec::Kind::sine:
            out += "kind = \"sine\"\n";
            out += "kappa = " + format_number(p.nonlin.kappa) + "\n";
            break;
        case NonlinSpec::Kind::polynomial:
            out += "kind = \"polynomial\"\n";
            out += "coeffs = ";
            detail::emit_double_list(out, p.nonlin.coeffs);
            out += "\n";
            break;
        case NonlinSpec::Kind::tabulated: {
            out += "kind = \"tabulated\"\n";
            out += "nodes = ";
            detail::emit_double_list(out, p.nonlin.table.grid.nodes);
            out += "\n";
            out += "values = [";
            for (std::size_t i = 0; i < p.nonlin.table.values.size(); ++i) {
                if (i) out += ", ";
                detail::emit_vector(out, p.nonlin.table.values[i]);
            }
            out += "]\n";
            break;
        }
    }

    out += "\n[delay]\n";
    switch (p.delay.kind) {
        case DelaySpec::Kind::identity:
            out += "kind = \"identity\"\n";
            break;
        case DelaySpec::Kind::proportional:
            out += "kind = \"proportional\"\n";
            out += "q = " + format_number(p.delay.q) + "\n";
            break;
        case DelaySpec::Kind::lag:
            out += "kind = \"lag\"\n";
            out += "tau = " + format_number(p.delay.tau) + "\n";
            break;
        case DelaySpec::Kind::tabulated:
            out += "kind = \"tabulated\"\n";
            out += "ts = ";
            detail::emit_double_list(out, p.delay.ts);
            out += "\n";
            out += "sigmas = ";
            detail::emit_double_list(out, p.delay.sigmas);
            out += "\n";
            break;
    }

    if (!p.nonlocal.empty()) {
        out += "\n[nonlocal]\n";
        out += "anchors = ";
        detail::emit_double_list(out, p.nonlocal.anchors);
        out += "\n";
        out += "coefficients = [";
        for (std::size_t k = 0; k < p.nonlocal.coefficients.size(); ++k) {
            if (k) out += ", ";
            detail::emit_matrix(out, p.nonlocal.coefficients[k]);
        }
        out += "]\n";
    }

    out += "\n[numerics]\n";
    out += "grid_n = " + std::to_string(cfg.numerics.grid_n) + "\n";
    out += "tol = " + format_number(cfg.numerics.tol) + "\n";
    out += "max_iter = " + std::to_string(cfg.numerics.max_iter) + "\n";
    out += "ml_tol = " + format_number(cfg.numerics.ml_tol) + "\n";
    out += "seed = " + std::to_string(cfg.numerics.seed) + "\n";

    return out;
}

inline void write_problem(const ProblemConfig& cfg, const std::string& path) {
    detail::write_text_file(path, problem_to_text(cfg));
}

}  // namespace hilfer
