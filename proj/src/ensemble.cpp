#include "nbldpc/ensemble.hpp"

#include "nbldpc/gf2.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace nbldpc {

double DegreeDistribution::eval(double x) const {
    double acc = 0.0;
    for (const auto& [d, w] : coeffs) acc += w * std::pow(x, d - 1);
    return acc;
}

double DegreeDistribution::integral() const {
    double acc = 0.0;
    for (const auto& [d, w] : coeffs) acc += w / d;
    return acc;
}

int DegreeDistribution::min_degree() const {
    if (coeffs.empty()) throw std::invalid_argument("empty degree distribution");
    return coeffs.begin()->first;
}

int DegreeDistribution::max_degree() const {
    if (coeffs.empty()) throw std::invalid_argument("empty degree distribution");
    return coeffs.rbegin()->first;
}

namespace {

void validate_dd(const DegreeDistribution& dd, const char* name) {
    if (dd.coeffs.empty()) {
        throw std::invalid_argument(std::string(name) + ": no coefficients");
    }
    double sum = 0.0;
    for (const auto& [d, w] : dd.coeffs) {
        if (d < 2) {
            throw std::invalid_argument(std::string(name) + ": degrees below 2 not supported");
        }
        if (!(w >= 0.0)) {
            throw std::invalid_argument(std::string(name) + ": negative weight");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument(std::string(name) + ": weights must sum to 1");
    }
}

}  // namespace

void validate(const EnsembleSpec& e) {
    validate_dd(e.lambda, "lambda");
    validate_dd(e.rho, "rho");
    if (e.m < 1 || e.m > 15) {
        throw std::invalid_argument("ensemble: m must be in [1, 15]");
    }
    if (e.labels == LabelKind::FiniteField && !is_irreducible(e.field_poly, e.m)) {
        throw std::invalid_argument("ensemble: field polynomial is not irreducible of degree m");
    }
}

double design_rate(const EnsembleSpec& e) {
    validate(e);
    return 1.0 - e.rho.integral() / e.lambda.integral();
}

double lambda_prime_zero(const EnsembleSpec& e) {
    auto it = e.lambda.coeffs.find(2);
    return it == e.lambda.coeffs.end() ? 0.0 : it->second;
}

double rho_prime_one(const EnsembleSpec& e) {
    double acc = 0.0;
    for (const auto& [d, w] : e.rho.coeffs) acc += w * (d - 1);
    return acc;
}

std::map<int, double> node_perspective(const DegreeDistribution& dd) {
    const double total = dd.integral();
    std::map<int, double> out;
    for (const auto& [d, w] : dd.coeffs) out[d] = (w / d) / total;
    return out;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() { return text[pos]; }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("degree distribution: " + what + " at position " +
                                    std::to_string(pos) + " of '" + std::string(text) + "'");
    }
};

double parse_number(Cursor& c) {
    c.skip_ws();
    const char* begin = c.text.data() + c.pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) c.fail("expected a number");
    c.pos += static_cast<std::size_t>(end - begin);
    return v;
}

// term := number | [number ['*']] 'y' ['^' integer]
void parse_term(Cursor& c, DegreeDistribution& out) {
    c.skip_ws();
    double coeff = 1.0;
    bool saw_coeff = false;
    if (c.peek() != 'y') {
        coeff = parse_number(c);
        saw_coeff = true;
        c.skip_ws();
        if (!c.done() && c.peek() == '*') {
            ++c.pos;
            c.skip_ws();
        }
    }
    int exponent = 0;
    if (!c.done() && c.peek() == 'y') {
        ++c.pos;
        exponent = 1;
        c.skip_ws();
        if (!c.done() && c.peek() == '^') {
            ++c.pos;
            const double e = parse_number(c);
            if (e != std::floor(e) || e < 0) c.fail("exponent must be a nonnegative integer");
            exponent = static_cast<int>(e);
        }
    } else if (!saw_coeff) {
        c.fail("expected a term");
    }
    out.coeffs[exponent + 1] += coeff;  // y^a carries degree a+1
}

}  // namespace

DegreeDistribution parse_degree_distribution(std::string_view text) {
    Cursor c{text};
    DegreeDistribution out;
    if (c.done()) c.fail("empty input");
    parse_term(c, out);
    while (!c.done()) {
        if (c.peek() != '+') c.fail("expected '+'");
        ++c.pos;
        parse_term(c, out);
    }
    return out;
}

std::pair<LabelKind, std::uint64_t> parse_label_spec(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    const std::string_view t = trim(text);
    if (t == "GL") return {LabelKind::GeneralLinear, 0};
    if (t.substr(0, 3) == "GF:") {
        const std::string mask(trim(t.substr(3)));
        std::size_t used = 0;
        std::uint64_t poly = 0;
        try {
            poly = std::stoull(mask, &used, 0);
        } catch (const std::exception&) {
            throw std::invalid_argument("labels: bad polynomial mask '" + mask + "'");
        }
        if (used != mask.size() || poly == 0) {
            throw std::invalid_argument("labels: bad polynomial mask '" + mask + "'");
        }
        return {LabelKind::FiniteField, poly};
    }
    throw std::invalid_argument("labels: expected 'GL' or 'GF:<polymask>', got '" +
                                std::string(t) + "'");
}

EnsembleSpec parse_ensemble_config(std::string_view text) {
    EnsembleSpec e;
    bool have_lambda = false, have_rho = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto t = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, t - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "lambda") {
                e.lambda = parse_degree_distribution(value);
                have_lambda = true;
            } else if (key == "rho") {
                e.rho = parse_degree_distribution(value);
                have_rho = true;
            } else if (key == "m") {
                e.m = std::stoi(value);
            } else if (key == "labels") {
                std::tie(e.labels, e.field_poly) = parse_label_spec(value);
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + " (" + key +
                                        "): " + err.what());
        }
    }
    if (!have_lambda || !have_rho) {
        throw std::invalid_argument("config: both 'lambda' and 'rho' are required");
    }
    validate(e);
    return e;
}

std::string format_label_spec(const EnsembleSpec& e) {
    if (e.labels == LabelKind::GeneralLinear) return "GL";
    std::ostringstream os;
    os << "GF:0x" << std::hex << e.field_poly;
    return os.str();
}

std::string format_degree_distribution(const DegreeDistribution& dd) {
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& [d, w] : dd.coeffs) {
        if (!first) os << " + ";
        first = false;
        if (w != 1.0) os << w << ' ';
        os << "y^" << (d - 1);
    }
    return os.str();
}

}  // namespace nbldpc
