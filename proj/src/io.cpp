#include "eofbounds/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "eofbounds/errors.hpp"

namespace eofb {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line, col = 1;
        else ++col;
    }
    return {line, col};
}

std::size_t dim_from_json(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"", 0, 0);
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer", 0, 0);
    return v.get<std::size_t>();
}

std::vector<double> matrix_part(const json& doc, const char* key, std::size_t d) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"", 0, 0);
    const json& rows = doc.at(key);
    if (!rows.is_array() || rows.size() != d)
        throw ParseError(std::string("\"") + key + "\" must have m*n = " + std::to_string(d) + " rows", 0, 0);
    std::vector<double> out;
    out.reserve(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || row.size() != d)
            throw ParseError(std::string("\"") + key + "\" row " + std::to_string(r) + " must have " +
                                 std::to_string(d) + " entries",
                             0, 0);
        for (const json& x : row) {
            if (!x.is_number()) throw ParseError(std::string("non-numeric entry in \"") + key + "\"", 0, 0);
            out.push_back(x.get<double>());
        }
    }
    return out;
}

BipartiteState parse_json_state(const std::string& text, std::size_t max_total) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(e.what(), line, col);
    }
    if (!doc.is_object()) throw ParseError("state file must be a JSON object", 1, 1);
    const BipartiteDims dims{dim_from_json(doc, "m"), dim_from_json(doc, "n")};
    dims.validate(max_total);
    const std::size_t d = dims.total();
    const auto re = matrix_part(doc, "re", d);
    const auto im = matrix_part(doc, "im", d);
    std::vector<cplx> entries(d * d);
    for (std::size_t i = 0; i < d * d; ++i) entries[i] = {re[i], im[i]};
    return BipartiteState::from_matrix(ComplexMatrix(d, d, std::move(entries)), dims, max_total);
}

template <typename T>
T parse_token(std::string_view tok, std::size_t line, std::size_t col, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(std::string("expected ") + what + ", got '" + std::string(tok) + "'", line, col);
    return value;
}

struct Token {
    std::string_view text;
    std::size_t col;
};

std::vector<Token> split_ws(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

BipartiteState parse_text_state(const std::string& text, std::size_t max_total) {
    std::vector<std::string_view> lines;
    std::string_view rest(text);
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        lines.push_back(rest.substr(0, nl));
        if (nl == std::string_view::npos) break;
        rest.remove_prefix(nl + 1);
    }
    std::size_t ln = 0;
    const auto next_nonblank = [&]() -> std::optional<std::size_t> {
        while (ln < lines.size() && split_ws(lines[ln]).empty()) ++ln;
        if (ln == lines.size()) return std::nullopt;
        return ln++;
    };

    const auto header = next_nonblank();
    if (!header) throw ParseError("empty state file", 1, 1);
    const auto head = split_ws(lines[*header]);
    if (head.size() != 2) throw ParseError("first line must be 'm n'", *header + 1, 1);
    const BipartiteDims dims{parse_token<std::size_t>(head[0].text, *header + 1, head[0].col, "integer m"),
                             parse_token<std::size_t>(head[1].text, *header + 1, head[1].col, "integer n")};
    dims.validate(max_total);
    const std::size_t d = dims.total();

    std::vector<cplx> entries;
    entries.reserve(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        const auto idx = next_nonblank();
        if (!idx) throw ParseError("expected " + std::to_string(d) + " matrix rows, found " + std::to_string(r),
                                   lines.size() + 1, 1);
        const std::size_t line_no = *idx + 1;
        const auto toks = split_ws(lines[*idx]);
        if (toks.size() != d)
            throw ParseError("expected " + std::to_string(d) + " entries, found " + std::to_string(toks.size()),
                             line_no, toks.empty() ? 1 : toks.back().col);
        for (const Token& t : toks) {
            const auto comma = t.text.find(',');
            if (comma == std::string_view::npos) throw ParseError("entry must be 're,im'", line_no, t.col);
            const double re = parse_token<double>(t.text.substr(0, comma), line_no, t.col, "real part");
            const double im = parse_token<double>(t.text.substr(comma + 1), line_no, t.col + comma + 1, "imaginary part");
            entries.emplace_back(re, im);
        }
    }
    if (const auto extra = next_nonblank())
        throw ParseError("unexpected content after the matrix", *extra + 1, 1);
    return BipartiteState::from_matrix(ComplexMatrix(d, d, std::move(entries)), dims, max_total);
}

} // namespace

BipartiteState parse_state(const std::string& text, std::size_t max_total) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json_state(text, max_total);
    return parse_text_state(text, max_total);
}

BipartiteState load_state(const std::filesystem::path& path, std::size_t max_total) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str(), max_total);
}

json state_to_json(const BipartiteState& state) {
    const auto& mat = state.matrix();
    json re = json::array(), im = json::array();
    for (std::size_t r = 0; r < mat.rows(); ++r) {
        json rr = json::array(), ir = json::array();
        for (std::size_t c = 0; c < mat.cols(); ++c) {
            rr.push_back(mat(r, c).real());
            ir.push_back(mat(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    return json{{"m", state.dims().m}, {"n", state.dims().n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

void save_state(const BipartiteState& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << state_to_json(state).dump(2) << '\n';
}

std::string format_number(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_number failed");
    return std::string(buf, ptr);
}

json to_json(const BoundsReport& r) {
    return json{
        {"m", r.dims.m},
        {"n", r.dims.n},
        {"lambdas",
         {{"lama", r.lambdas.lam_a},
          {"lamb", r.lambdas.lam_b},
          {"lamprimea", r.lambdas.lam_prime_a},
          {"lamprimeb", r.lambdas.lam_prime_b}}},
        {"eof_lower", r.eof_lower},
        {"eof_upper", r.eof_upper},
        {"caf_lower", r.caf_lower},
        {"caf", {{"omega", r.caf.omega}, {"gamma", r.caf.gamma}, {"active_branch", to_string(r.caf.active_branch)}}},
        {"conc_sq_lower", r.conc_sq_lower},
        {"conc_sq_lower_raw", r.conc_sq_lower_raw},
        {"conc_sq_upper", r.conc_sq_upper},
        {"units", to_string(r.units)},
        {"mode", to_string(r.mode)},
    };
}

json to_json(const oracle::WitnessResult& w) {
    return json{{"mu", w.mu},
                {"lambda", w.lambda},
                {"entropy", w.entropy},
                {"epsilon", w.epsilon},
                {"eta", w.eta},
                {"lower_gap", w.lower_gap},
                {"upper_gap", w.upper_gap},
                {"lower_violation", w.lower_violation},
                {"upper_violation", w.upper_violation}};
}

json to_json(const oracle::VerificationReport& r) {
    json ws = json::array();
    for (const auto& w : r.witnesses) ws.push_back(to_json(w));
    return json{{"samples", r.samples},
                {"violations_lower", r.violations_lower},
                {"violations_upper", r.violations_upper},
                {"worst_gap", r.worst_gap},
                {"witnesses", std::move(ws)}};
}

namespace {

json to_json(const ShotEstimate& e) {
    return json{{"point", e.point}, {"half_width", e.half_width}, {"shots", e.shots}, {"confidence", e.confidence}};
}

json to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

} // namespace

json to_json(const EstimatedBounds& e) {
    return json{{"purity", to_json(e.purity)},
                {"purity_a", to_json(e.purity_a)},
                {"purity_b", to_json(e.purity_b)},
                {"lam_a", to_json(e.lam_a)},
                {"lam_b", to_json(e.lam_b)},
                {"lam_prime_a", to_json(e.lam_prime_a)},
                {"lam_prime_b", to_json(e.lam_prime_b)},
                {"lower_interval", to_json(e.lower)},
                {"upper_interval", to_json(e.upper)}};
}

std::string curves_csv(const EnvelopeSet& env, std::size_t grid) {
    if (grid == 0) throw std::invalid_argument("curves_csv: grid must be positive");
    const auto branches = branches_for(env.m);
    std::ostringstream out;
    out << "lambda,eta,epsilon,X,Y";
    for (const Branch& b : branches) out << ',' << b.label();
    out << '\n';
    const double top = env.domain_max();
    for (std::size_t i = 1; i <= grid; ++i) {
        const double x = i == grid ? top : top * static_cast<double>(i) / static_cast<double>(grid);
        out << format_number(x) << ',' << format_number(env.eta.eval(x, true)) << ','
            << format_number(env.epsilon.eval(x, true)) << ','
            << format_number(extremal_xy(env.m, x, Extremum::X, env.mode)) << ','
            << format_number(extremal_xy(env.m, x, Extremum::Y, env.mode));
        for (const Branch& b : branches) {
            out << ',';
            if (const auto e = branch_solutions(b, x)) out << format_number(e->value);
        }
        out << '\n';
    }
    return out.str();
}

std::optional<PrintedExample> printed_example(double x, double a) {
    const double a2 = a * a;
    const double den = (2.0 + 3.0 * a2) * (2.0 + 3.0 * a2);
    if (x == 0.1)
        return PrintedExample{(1.45 + 9.21 * a2 - 0.38 * a2 * a2) / den, 1.14 * (0.19 + a2) * (9.67 + a2) / den};
    if (x == 0.001)
        return PrintedExample{(1.99 + 11.97 * a2 - 0.004 * a2 * a2) / den, 0.01 * (0.17 + a2) * (999.67 + a2) / den};
    return std::nullopt;
}

std::string example_csv(double x, double a_min, double a_max, std::size_t steps, const EnvelopeSet& env,
                        Units units) {
    if (steps == 0) throw std::invalid_argument("example_csv: steps must be positive");
    if (!std::isfinite(x) || !std::isfinite(a_min) || !std::isfinite(a_max))
        throw std::invalid_argument("example_csv: non-finite parameter");
    const bool printed = printed_example(x, 0.0).has_value();
    std::ostringstream out;
    out << "a,lambda,lambda_prime,eof_lower,eof_upper";
    if (printed) out << ",paper_lambda,paper_lambda_prime,paper_delta";
    out << '\n';
    for (std::size_t i = 0; i < steps; ++i) {
        const double a = steps == 1 ? a_min : a_min + (a_max - a_min) * static_cast<double>(i) / (steps - 1);
        const BipartiteState rho = example_state(x, a);
        const LambdaQuantities l = lambda_quantities(rho);
        const EofBounds b = eof_bounds(rho, env);
        out << format_number(a) << ',' << format_number(l.lam_a) << ',' << format_number(l.lam_prime_a) << ','
            << format_number(from_nats(b.lower, units)) << ',' << format_number(from_nats(b.upper, units));
        if (printed) {
            const PrintedExample p = *printed_example(x, a);
            const double delta = std::max(std::abs(l.lam_a - p.lambda), std::abs(l.lam_prime_a - p.lambda_prime));
            out << ',' << format_number(p.lambda) << ',' << format_number(p.lambda_prime) << ','
                << format_number(delta);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace eofb
