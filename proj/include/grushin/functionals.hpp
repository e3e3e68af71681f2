#pragma once

#include <optional>
#include <string>

#include "grushin/extremals.hpp"
#include "grushin/operators.hpp"
#include "grushin/quadrature.hpp"

namespace grushin {

// The twelve inequality cases: a first-order (Hardy) family with weights
// rho^alpha |grad rho|^t, and two second-order (Rellich) families, each in a
// base form plus improved forms carrying ball, logarithmic, or L^q-gradient
// remainder terms.
enum class CaseId {
    H_BASE,         // whole space, p=2, alpha=t=0
    H_IMPROVED_31,  // ball, Poincare remainder with unknown constant
    H_LOG_32,       // ball, log remainder, coefficient 1/4
    H_LP_33,        // general p
    H_CKN_34,       // ball, L^q gradient remainder, unknown constant
    R1_41,          // whole space
    R1_BALL_42,     // ball remainder, unknown constant
    R1_LOG_43,      // log remainder
    R1_CKN_44,      // L^q gradient remainder, unknown constant
    R2_45,          // whole space
    R2_BALL_46,     // ball remainder, unknown constant
    R2_LOG_47,      // log remainder
};

std::string case_name(CaseId id);
std::optional<CaseId> case_from_name(const std::string& name);

struct InequalityCase {
    CaseId id = CaseId::H_BASE;
    double alpha = 0.0;
    double t = 0.0;
    double p = 2.0;   // H_LP_33 only
    double q = 1.5;   // CKN cases only
    Support domain;   // whole space or rho-ball
    GrushinParams params;

    // throws std::invalid_argument naming the violated hypothesis
    void validate() const;
};

InequalityCase make_case(CaseId id, const GrushinParams& params, double alpha = 0.0,
                         double t = 0.0, double p = 2.0, double q = 1.5,
                         Support domain = Support::whole_space());

enum class Term { Lhs, Principal, Remainder };

struct FunctionalValue {
    std::string name;
    double value = 0.0;
    bool infinite = false;  // quadrature reported divergence
    QuadratureResult quadrature;
};

// Explicit constant attached to the principal right-hand term.
double sharp_constant(const InequalityCase& c);

// Explicit remainder coefficient where the paper gives one (the three log
// cases); empty for the unknown-constant remainders.
std::optional<double> remainder_constant(const InequalityCase& c);

bool has_remainder(CaseId id);

// Evaluates one term of the inequality. The radial overload reduces to a 1D
// integral through the polar constant; the field overload integrates the
// symmetry-reduced form in (|x|, |y|).
FunctionalValue evaluate_term(const InequalityCase& c, Term term, const RadialProfile& phi,
                              double tol = 1e-8);
FunctionalValue evaluate_term(const InequalityCase& c, Term term, const ScalarField& phi,
                              double tol = 1e-7);

// LHS minus all explicitly weighted right-hand terms; +infinity when the LHS
// diverges while the right side stays finite.
double gap(const InequalityCase& c, const RadialProfile& phi, double tol = 1e-8);
double gap(const InequalityCase& c, const ScalarField& phi, double tol = 1e-7);

// LHS minus sharp_constant * principal, computed as a single radial integral
// so the near-extremal cancellation between the two sides stays accurate.
FunctionalValue principal_gap(const InequalityCase& c, const RadialProfile& phi,
                              double tol = 1e-10);

// LHS / principal term.
double rayleigh_quotient(const InequalityCase& c, const RadialProfile& phi, double tol = 1e-8);
double rayleigh_quotient(const InequalityCase& c, const ScalarField& phi, double tol = 1e-7);

}  // namespace grushin
