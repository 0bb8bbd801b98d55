#pragma once

// Integer-program construction for the minimum-trajectory cover: binary X_k
// (trajectory k used) and Y_k_l (trajectory k covers link l), continuous
// intersection parameter a_k_l in [0,1] when active, trajectory anchor
// (xk_k, yk_k) and velocity (Ak_k, Bk_k). Cover rows force every link onto
// some trajectory; geometry rows tie the covering point of link l at its
// blocking time to the trajectory's motion, relaxed by +-(1 - Y_k_l) * M.
// The model is built, checked and emitted as LP text; it is never solved here.

#include <map>
#include <string>
#include <vector>

#include "mmtrack/world.hpp"

namespace mmtrack {

enum class IlpVarKind { Binary, Real };

struct IlpVar {
    std::string name;
    IlpVarKind kind = IlpVarKind::Real;
};

enum class IlpRowKind { Cover, GeomX, GeomY, AlphaLo, AlphaHi, Link };

enum class IlpRel { Le, Ge };

// One linear inequality: sum(coef * var) rel rhs.
struct IlpPart {
    std::string name;
    std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
    IlpRel rel = IlpRel::Le;
    double rhs = 0.0;
};

// A logical constraint; geometry rows carry two parts (lower/upper relaxation),
// everything else one.
struct IlpRow {
    std::string name;
    IlpRowKind kind = IlpRowKind::Cover;
    int k = 0;  // 1-based trajectory index, 0 if not applicable
    int l = 0;  // 1-based link index, 0 if not applicable
    std::vector<IlpPart> parts;
};

struct IlpModel {
    int K = 0;
    double M = 1e6;
    std::vector<BlockedLink> links;
    std::vector<IlpVar> vars;
    std::vector<std::pair<int, double>> objective;  // minimized
    std::vector<IlpRow> rows;

    int var_index(const std::string& name) const;  // -1 if absent
};

struct IlpAssignment {
    std::map<std::string, double> values;

    void set(const std::string& name, double v) { values[name] = v; }
};

struct IlpViolation {
    std::string part;  // offending part name, e.g. "cover_2" or "geox_1_2_hi"
    IlpRowKind kind;
    double amount;     // positive slack by which the inequality fails
};

struct IlpCheckResult {
    bool ok = true;
    std::vector<IlpViolation> violations;
};

// K >= 1 trajectories, |links| >= 1, M > 0. Variable names: X_k, Y_k_l,
// a_k_l, xk_k, yk_k, Ak_k, Bk_k (k, l 1-based).
IlpModel build_ilp(const std::vector<BlockedLink>& blocked, int K, double M = 1e6);

// Verifies binary integrality and every row within tol. The assignment must
// cover all model variables (missing name -> std::invalid_argument).
IlpCheckResult check_assignment(const IlpModel& m, const IlpAssignment& a, double tol);

// lp-format text: one "min:" objective line, one named row per part, one
// binary declaration per binary variable, free declarations for the reals.
std::string emit_lp(const IlpModel& m);

}  // namespace mmtrack
