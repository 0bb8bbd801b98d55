#include "mmtrack/ilp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mmtrack/csv.hpp"

namespace mmtrack {
namespace {

std::string idx2(const std::string& stem, int k, int l) {
    return stem + "_" + std::to_string(k) + "_" + std::to_string(l);
}

std::string idx1(const std::string& stem, int k) { return stem + "_" + std::to_string(k); }

}  // namespace

int IlpModel::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<int>(i);
    return -1;
}

IlpModel build_ilp(const std::vector<BlockedLink>& blocked, int K, double M) {
    if (K < 1) throw std::invalid_argument("build_ilp: K must be >= 1");
    if (blocked.empty()) throw std::invalid_argument("build_ilp: no blocked links");
    if (!(M > 0.0)) throw std::invalid_argument("build_ilp: M must be positive");

    IlpModel m;
    m.K = K;
    m.M = M;
    m.links = blocked;
    const int n = static_cast<int>(blocked.size());

    auto add_var = [&](const std::string& name, IlpVarKind kind) {
        m.vars.push_back({name, kind});
        return static_cast<int>(m.vars.size()) - 1;
    };

    std::vector<int> X(K + 1), xk(K + 1), yk(K + 1), Ak(K + 1), Bk(K + 1);
    std::vector<std::vector<int>> Y(K + 1, std::vector<int>(n + 1));
    std::vector<std::vector<int>> alpha(K + 1, std::vector<int>(n + 1));

    for (int k = 1; k <= K; ++k) X[k] = add_var(idx1("X", k), IlpVarKind::Binary);
    for (int k = 1; k <= K; ++k)
        for (int l = 1; l <= n; ++l) Y[k][l] = add_var(idx2("Y", k, l), IlpVarKind::Binary);
    for (int k = 1; k <= K; ++k)
        for (int l = 1; l <= n; ++l) alpha[k][l] = add_var(idx2("a", k, l), IlpVarKind::Real);
    for (int k = 1; k <= K; ++k) {
        xk[k] = add_var(idx1("xk", k), IlpVarKind::Real);
        yk[k] = add_var(idx1("yk", k), IlpVarKind::Real);
        Ak[k] = add_var(idx1("Ak", k), IlpVarKind::Real);
        Bk[k] = add_var(idx1("Bk", k), IlpVarKind::Real);
    }

    for (int k = 1; k <= K; ++k) m.objective.emplace_back(X[k], 1.0);

    // Cover: sum_k Y_k_l >= 1 for every link l.
    for (int l = 1; l <= n; ++l) {
        IlpRow row;
        row.name = idx1("cover", l);
        row.kind = IlpRowKind::Cover;
        row.l = l;
        IlpPart p;
        p.name = row.name;
        p.rel = IlpRel::Ge;
        p.rhs = 1.0;
        for (int k = 1; k <= K; ++k) p.terms.emplace_back(Y[k][l], 1.0);
        row.parts.push_back(std::move(p));
        m.rows.push_back(std::move(row));
    }

    // Geometry: the covering point a*lb + (1-a)*le of link l equals the
    // trajectory position anchor + t_block * velocity, per axis, relaxed by
    // +-(1 - Y_k_l) * M. Written as
    //   a*(lb - le) - pos - t*vel + M*Y <= M - le   (hi)
    //   a*(lb - le) - pos - t*vel - M*Y >= -M - le  (lo)
    for (int k = 1; k <= K; ++k) {
        for (int l = 1; l <= n; ++l) {
            const BlockedLink& b = blocked[l - 1];
            const double t = b.t_block;
            const struct {
                IlpRowKind kind;
                const char* stem;
                double lb, le;
                int pos, vel;
            } axes[2] = {
                {IlpRowKind::GeomX, "geox", b.link.seg.a.x, b.link.seg.b.x, xk[k], Ak[k]},
                {IlpRowKind::GeomY, "geoy", b.link.seg.a.y, b.link.seg.b.y, yk[k], Bk[k]},
            };
            for (const auto& ax : axes) {
                IlpRow row;
                row.name = idx2(ax.stem, k, l);
                row.kind = ax.kind;
                row.k = k;
                row.l = l;
                IlpPart hi;
                hi.name = row.name + "_hi";
                hi.rel = IlpRel::Le;
                hi.terms = {{alpha[k][l], ax.lb - ax.le},
                            {ax.pos, -1.0},
                            {ax.vel, -t},
                            {Y[k][l], M}};
                hi.rhs = M - ax.le;
                IlpPart lo;
                lo.name = row.name + "_lo";
                lo.rel = IlpRel::Ge;
                lo.terms = {{alpha[k][l], ax.lb - ax.le},
                            {ax.pos, -1.0},
                            {ax.vel, -t},
                            {Y[k][l], -M}};
                lo.rhs = -M - ax.le;
                row.parts.push_back(std::move(hi));
                row.parts.push_back(std::move(lo));
                m.rows.push_back(std::move(row));
            }
        }
    }

    // Alpha bounds: -(1-Y)M <= a <= 1 + (1-Y)M, one row per side.
    for (int k = 1; k <= K; ++k) {
        for (int l = 1; l <= n; ++l) {
            IlpRow lo;
            lo.name = idx2("alpha", k, l) + "_lo";
            lo.kind = IlpRowKind::AlphaLo;
            lo.k = k;
            lo.l = l;
            lo.parts.push_back({lo.name, {{alpha[k][l], 1.0}, {Y[k][l], -M}}, IlpRel::Ge, -M});
            m.rows.push_back(std::move(lo));

            IlpRow hi;
            hi.name = idx2("alpha", k, l) + "_hi";
            hi.kind = IlpRowKind::AlphaHi;
            hi.k = k;
            hi.l = l;
            hi.parts.push_back({hi.name, {{alpha[k][l], 1.0}, {Y[k][l], M}}, IlpRel::Le, 1.0 + M});
            m.rows.push_back(std::move(hi));
        }
    }

    // Linking: Y_k_l <= X_k.
    for (int k = 1; k <= K; ++k) {
        for (int l = 1; l <= n; ++l) {
            IlpRow row;
            row.name = idx2("link", k, l);
            row.kind = IlpRowKind::Link;
            row.k = k;
            row.l = l;
            row.parts.push_back({row.name, {{Y[k][l], 1.0}, {X[k], -1.0}}, IlpRel::Le, 0.0});
            m.rows.push_back(std::move(row));
        }
    }

    return m;
}

IlpCheckResult check_assignment(const IlpModel& m, const IlpAssignment& a, double tol) {
    std::vector<double> v(m.vars.size());
    for (std::size_t i = 0; i < m.vars.size(); ++i) {
        auto it = a.values.find(m.vars[i].name);
        if (it == a.values.end())
            throw std::invalid_argument("check_assignment: missing variable " + m.vars[i].name);
        v[i] = it->second;
    }

    IlpCheckResult res;
    for (std::size_t i = 0; i < m.vars.size(); ++i) {
        if (m.vars[i].kind != IlpVarKind::Binary) continue;
        const double r = std::round(v[i]);
        const double off = std::abs(v[i] - r);
        if (off > tol || (r != 0.0 && r != 1.0)) {
            res.ok = false;
            res.violations.push_back({m.vars[i].name + "_binary", IlpRowKind::Link,
                                      std::max(off, std::abs(r))});
        }
    }
    for (const auto& row : m.rows) {
        for (const auto& p : row.parts) {
            double lhs = 0.0;
            for (const auto& [vi, coef] : p.terms) lhs += coef * v[vi];
            const double slack = (p.rel == IlpRel::Le) ? lhs - p.rhs : p.rhs - lhs;
            if (slack > tol) {
                res.ok = false;
                res.violations.push_back({p.name, row.kind, slack});
            }
        }
    }
    return res;
}

std::string emit_lp(const IlpModel& m) {
    std::ostringstream out;
    out << "/* trajectory cover: K=" << m.K << " links=" << m.links.size()
        << " M=" << num_str(m.M) << " */\n";
    out << "min:";
    for (const auto& [vi, coef] : m.objective) {
        out << " ";
        if (coef == 1.0) out << "+ " << m.vars[vi].name;
        else out << "+ " << num_str(coef) << " " << m.vars[vi].name;
    }
    out << ";\n\n";

    auto term_str = [&](double coef, const std::string& name, bool first) {
        std::string s;
        const double mag = std::abs(coef);
        s += (coef < 0.0) ? (first ? "-" : "- ") : (first ? "" : "+ ");
        if (mag != 1.0) s += num_str(mag) + " ";
        s += name;
        return s;
    };

    for (const auto& row : m.rows) {
        for (const auto& p : row.parts) {
            out << p.name << ":";
            bool first = true;
            for (const auto& [vi, coef] : p.terms) {
                if (coef == 0.0) continue;
                out << " " << term_str(coef, m.vars[vi].name, first);
                first = false;
            }
            out << " " << (p.rel == IlpRel::Le ? "<=" : ">=") << " " << num_str(p.rhs) << ";\n";
        }
    }
    out << "\n";
    for (const auto& var : m.vars)
        if (var.kind == IlpVarKind::Binary) out << "bin " << var.name << ";\n";
    for (const auto& var : m.vars)
        if (var.kind == IlpVarKind::Real) out << "free " << var.name << ";\n";
    return out.str();
}

}  // namespace mmtrack
