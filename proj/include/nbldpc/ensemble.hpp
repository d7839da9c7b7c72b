#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nbldpc {

/// A computation was requested for a configuration the analysis does not
/// cover (e.g. finite-field labels with m > 3 in density evolution).
struct unsupported_config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Edge-perspective degree distribution: coeffs[d] is the weight of
/// degree d in sum_d w_d x^{d-1}.
struct DegreeDistribution {
    std::map<int, double> coeffs;

    double eval(double x) const;         // sum_d w_d x^{d-1}
    double integral() const;             // sum_d w_d / d
    int min_degree() const;
    int max_degree() const;
};

enum class LabelKind { GeneralLinear, FiniteField };

/// Degree distribution pair plus alphabet exponent: symbols are GF(2)^m,
/// edge labels either uniform over GL(m, GF(2)) or over the nonzero
/// elements of GF(2^m) given by field_poly.
struct EnsembleSpec {
    DegreeDistribution lambda;
    DegreeDistribution rho;
    int m = 1;
    LabelKind labels = LabelKind::GeneralLinear;
    std::uint64_t field_poly = 0;  // meaningful when labels == FiniteField
};

/// Throws std::invalid_argument unless: all weights >= 0, both weight sums
/// are 1 within 1e-12, all degrees >= 2, 1 <= m <= 15, and (for finite-field
/// labels) field_poly is irreducible of degree m.
void validate(const EnsembleSpec& e);

/// r = 1 - (sum_d rho_d/d) / (sum_d lambda_d/d).
double design_rate(const EnsembleSpec& e);

double lambda_prime_zero(const EnsembleSpec& e);  // = lambda_2
double rho_prime_one(const EnsembleSpec& e);      // = sum_d rho_d (d-1)

/// Node-perspective weights L_d = (w_d/d) / sum (w_d'/d').
std::map<int, double> node_perspective(const DegreeDistribution& dd);

/// Parses "0.5 y^1 + 0.5 y^4", "y^2", "y". Exponent a means degree a+1.
DegreeDistribution parse_degree_distribution(std::string_view text);

/// Parses "GL" or "GF:0x7" (polynomial bit mask, LSB = constant term).
std::pair<LabelKind, std::uint64_t> parse_label_spec(std::string_view text);

/// Key = value lines: lambda, rho, m, labels. '#' starts a comment.
EnsembleSpec parse_ensemble_config(std::string_view text);

std::string format_label_spec(const EnsembleSpec& e);
std::string format_degree_distribution(const DegreeDistribution& dd);

}  // namespace nbldpc
