#ifndef TSVD_SDIAG_HPP
#define TSVD_SDIAG_HPP

//
// The s-diagonal classifier.  An f-diagonal tensor S is s-diagonal iff it
// is a fixed point of the sorted-spectrum mapping G; this module provides the
// exact fixed-point test, four cheap necessary conditions, the general
// spectral characterization (nonnegative, nonincreasing real diagonal
// spectrum) and the direct entrywise characterizations for p = 2, 3, 4.
//
// All inequality checks use additive slack: a condition "q >= 0"
// passes iff q >= -tol_eff with tol_eff = tol * max(1, |S|_F).  Equalities
// pass iff |difference| <= tol_eff.  Membership is boundary-inclusive (the
// s-diagonal set is a closed convex cone).
//

#include <limits>
#include <string>
#include <vector>

#include "dft.hpp"
#include "format.hpp"
#include "tensor3.hpp"
#include "tsvd.hpp"

namespace tsvd {

enum class Verdict { SDiagonal, NotSDiagonal, Inconclusive };
enum class Method { Necessary, FixedPoint, GeneralSpectral, DirectP2, DirectP3, DirectP4 };

inline const char* to_string(Verdict v)
{
    switch (v) {
        case Verdict::SDiagonal: return "SDIAGONAL";
        case Verdict::NotSDiagonal: return "NOT_SDIAGONAL";
        default: return "INCONCLUSIVE";
    }
}

inline const char* to_string(Method m)
{
    switch (m) {
        case Method::Necessary: return "Necessary";
        case Method::FixedPoint: return "FixedPoint";
        case Method::GeneralSpectral: return "GeneralSpectral";
        case Method::DirectP2: return "DirectP2";
        case Method::DirectP3: return "DirectP3";
        default: return "DirectP4";
    }
}

struct ConditionResult {
    std::string id;
    bool pass = true;
    double worst = 0.0;  // magnitude of the worst violation (0 when passing)
    int i = 0, k = 0;    // 1-based witness of the tightest quantity
};

struct SDiagReport {
    Verdict verdict = Verdict::Inconclusive;
    Method method = Method::Necessary;
    std::vector<ConditionResult> conditions;
    double tolerance = 0.0;

    bool all_pass() const
    {
        for (const auto& c : conditions)
            if (!c.pass)
                return false;
        return true;
    }

    std::string to_text() const
    {
        std::string out;
        for (const auto& c : conditions) {
            out += c.id;
            out += c.pass ? " PASS" : " FAIL";
            out += " worst=" + format_double(c.worst);
            out += " at=(i=" + std::to_string(c.i) + ",k=" + std::to_string(c.k) + ")\n";
        }
        out += "VERDICT ";
        out += to_string(verdict);
        out += " method=";
        out += to_string(method);
        out += " tol=" + format_double(tolerance) + "\n";
        return out;
    }
};

namespace detail {

// Tracks the tightest (smallest-slack) quantity of one condition.  A
// quantity with slack q passes iff q >= -tol.
struct CondTracker {
    double min_slack = std::numeric_limits<double>::infinity();
    int wi = 0, wk = 0;  // 1-based

    void observe(double slack, int i1, int k1)
    {
        if (slack < min_slack) {
            min_slack = slack;
            wi = i1;
            wk = k1;
        }
    }

    ConditionResult result(std::string id, double tol) const
    {
        ConditionResult r;
        r.id = std::move(id);
        if (min_slack < std::numeric_limits<double>::infinity()) {
            r.pass = min_slack >= -tol;
            r.worst = r.pass ? 0.0 : -min_slack;
            r.i = wi;
            r.k = wk;
        }
        return r;
    }
};

inline double sdiag_tol(const FDiagonal3& s, double tol)
{
    return tol * std::max(1.0, s.norm());
}

// delta(i,k) = sum_l omega^{lk} S(i,i,l), 0-based i and k; the diagonal of
// the k-th spectral block.
inline CMatrix sdiag_delta(const FDiagonal3& s)
{
    const int p = s.depth();
    CMatrix d(s.min_mn(), p);
    for (int i = 0; i < s.min_mn(); ++i)
        for (int k = 0; k < p; ++k) {
            Complex acc(0.0, 0.0);
            for (int l = 0; l < p; ++l)
                acc += unit_root_power(p, static_cast<long long>(l) * k) * s.diag(i, l);
            d(i, k) = acc;
        }
    return d;
}

// Third-mode symmetry S(i,i,k) = S(i,i,p-k+2), observed as an equality
// condition (slack = -|difference|).
inline CondTracker symmetry_tracker(const FDiagonal3& s)
{
    const int p = s.depth();
    CondTracker t;
    t.observe(0.0, 1, 1);  // vacuous for p = 2
    for (int i = 0; i < s.min_mn(); ++i)
        for (int k = 1; k <= (p - 1) / 2; ++k)
            t.observe(-std::abs(s.diag(i, k) - s.diag(i, p - k)), i + 1, k + 1);
    return t;
}

}  // namespace detail

/// Four necessary conditions.  Can reject membership but never certify it:
/// the verdict is NotSDiagonal or Inconclusive.
inline SDiagReport check_necessary(const FDiagonal3& s, double tol = 1e-10)
{
    const int p = s.depth();
    const int mn = s.min_mn();
    const double te = detail::sdiag_tol(s, tol);

    detail::CondTracker tubal, slice1, leading;
    for (int i = 0; i + 1 < mn; ++i) {
        tubal.observe(s.tube(i).squaredNorm() - s.tube(i + 1).squaredNorm(), i + 1, 0);
        slice1.observe(s.diag(i, 0) - s.diag(i + 1, 0), i + 1, 1);
    }
    if (mn > 0) {
        tubal.observe(s.tube(mn - 1).squaredNorm(), mn, 0);
        slice1.observe(s.diag(mn - 1, 0), mn, 1);
    }
    for (int i = 0; i < mn; ++i)
        for (int k = 0; k < p; ++k)
            leading.observe(s.diag(i, 0) - std::abs(s.diag(i, k)), i + 1, k + 1);

    SDiagReport r;
    r.method = Method::Necessary;
    r.tolerance = te;
    r.conditions.push_back(tubal.result("tubal_2norm_decay", te));
    r.conditions.push_back(slice1.result("first_slice_decay", te));
    r.conditions.push_back(detail::symmetry_tracker(s).result("third_mode_symmetry", te));
    r.conditions.push_back(leading.result("tubal_leading_max", te));
    r.verdict = r.all_pass() ? Verdict::Inconclusive : Verdict::NotSDiagonal;
    return r;
}

/// Exact membership test: s is s-diagonal iff G(s) = s.
inline SDiagReport check_fixed_point(const FDiagonal3& s, double tol = 1e-10)
{
    const double te = detail::sdiag_tol(s, tol);
    const FDiagonal3 g = gmap(s.to_tensor());

    double resid_sq = 0.0;
    double worst = -1.0;
    int wi = 1, wk = 1;
    for (int i = 0; i < s.min_mn(); ++i)
        for (int k = 0; k < s.depth(); ++k) {
            const double d = g.diag(i, k) - s.diag(i, k);
            resid_sq += d * d;
            if (std::abs(d) > worst) {
                worst = std::abs(d);
                wi = i + 1;
                wk = k + 1;
            }
        }
    const double resid = std::sqrt(resid_sq);

    SDiagReport r;
    r.method = Method::FixedPoint;
    r.tolerance = te;
    ConditionResult c;
    c.id = "fixed_point_residual";
    c.pass = resid <= te;
    c.worst = c.pass ? 0.0 : resid;
    c.i = wi;
    c.k = wk;
    r.conditions.push_back(c);
    r.verdict = c.pass ? Verdict::SDiagonal : Verdict::NotSDiagonal;
    return r;
}

/// General spectral characterization: third-mode symmetry (which makes the
/// spectrum real and diagonal), then nonnegativity and nonincreasing order
/// of the real spectral diagonals, with a phantom zero row below i = min(m,n).
inline SDiagReport check_general(const FDiagonal3& s, double tol = 1e-10)
{
    const int p = s.depth();
    const int mn = s.min_mn();
    const double te = detail::sdiag_tol(s, tol);
    const CMatrix delta = detail::sdiag_delta(s);

    detail::CondTracker realness, nonneg, decay;
    for (int i = 0; i < mn; ++i)
        for (int k = 0; k < p; ++k) {
            realness.observe(-std::abs(delta(i, k).imag()), i + 1, k + 1);
            nonneg.observe(delta(i, k).real(), i + 1, k + 1);
            const double next = (i + 1 < mn) ? delta(i + 1, k).real() : 0.0;
            decay.observe(delta(i, k).real() - next, i + 1, k + 1);
        }

    SDiagReport r;
    r.method = Method::GeneralSpectral;
    r.tolerance = te;
    r.conditions.push_back(detail::symmetry_tracker(s).result("third_mode_symmetry", te));
    r.conditions.push_back(realness.result("spectrum_real", te));
    r.conditions.push_back(nonneg.result("spectrum_nonneg", te));
    r.conditions.push_back(decay.result("spectrum_decay", te));
    r.verdict = r.all_pass() ? Verdict::SDiagonal : Verdict::NotSDiagonal;
    return r;
}

/// p = 2: leading entry maximum plus strong first-slice decay.  The decay
/// condition runs through the phantom zero row, whose instance coincides
/// with the leading-entry condition at i = min(m,n).
inline SDiagReport check_direct_p2(const FDiagonal3& s, double tol = 1e-10)
{
    if (s.depth() != 2)
        throw WrongP("check_direct_p2: p = " + std::to_string(s.depth()));
    const int mn = s.min_mn();
    const double te = detail::sdiag_tol(s, tol);

    detail::CondTracker leading, decay;
    for (int i = 0; i < mn; ++i) {
        leading.observe(s.diag(i, 0) - std::abs(s.diag(i, 1)), i + 1, 2);
        const double d1 = s.diag(i, 0) - ((i + 1 < mn) ? s.diag(i + 1, 0) : 0.0);
        const double d2 = s.diag(i, 1) - ((i + 1 < mn) ? s.diag(i + 1, 1) : 0.0);
        decay.observe(d1 - std::abs(d2), i + 1, 2);
    }

    SDiagReport r;
    r.method = Method::DirectP2;
    r.tolerance = te;
    r.conditions.push_back(leading.result("leading_max_p2", te));
    r.conditions.push_back(decay.result("strong_slice_decay_p2", te));
    r.verdict = r.all_pass() ? Verdict::SDiagonal : Verdict::NotSDiagonal;
    return r;
}

/// p = 3: symmetry of slices 2 and 3, strong leading entry maximum, strong
/// first-slice decay (differenced), phantom zero row included.
inline SDiagReport check_direct_p3(const FDiagonal3& s, double tol = 1e-10)
{
    if (s.depth() != 3)
        throw WrongP("check_direct_p3: p = " + std::to_string(s.depth()));
    const int mn = s.min_mn();
    const double te = detail::sdiag_tol(s, tol);

    detail::CondTracker sym, leading, decay;
    for (int i = 0; i < mn; ++i) {
        sym.observe(-std::abs(s.diag(i, 1) - s.diag(i, 2)), i + 1, 2);
        leading.observe(s.diag(i, 0) - std::max(-2.0 * s.diag(i, 1), s.diag(i, 1)), i + 1, 2);
        const double d1 = s.diag(i, 0) - ((i + 1 < mn) ? s.diag(i + 1, 0) : 0.0);
        const double d2 = s.diag(i, 1) - ((i + 1 < mn) ? s.diag(i + 1, 1) : 0.0);
        decay.observe(d1 - std::max(-2.0 * d2, d2), i + 1, 2);
    }

    SDiagReport r;
    r.method = Method::DirectP3;
    r.tolerance = te;
    r.conditions.push_back(sym.result("mode3_symmetry_p3", te));
    r.conditions.push_back(leading.result("strong_leading_max_p3", te));
    r.conditions.push_back(decay.result("strong_slice_decay_p3", te));
    r.verdict = r.all_pass() ? Verdict::SDiagonal : Verdict::NotSDiagonal;
    return r;
}

/// p = 4: symmetry of slices 2 and 4, the combined slice-1/slice-3
/// inequality and its differenced version, phantom zero row included.
inline SDiagReport check_direct_p4(const FDiagonal3& s, double tol = 1e-10)
{
    if (s.depth() != 4)
        throw WrongP("check_direct_p4: p = " + std::to_string(s.depth()));
    const int mn = s.min_mn();
    const double te = detail::sdiag_tol(s, tol);

    detail::CondTracker sym, leading, decay;
    for (int i = 0; i < mn; ++i) {
        sym.observe(-std::abs(s.diag(i, 1) - s.diag(i, 3)), i + 1, 2);
        leading.observe(s.diag(i, 0) + s.diag(i, 2) -
                            std::max(2.0 * std::abs(s.diag(i, 1)), 2.0 * s.diag(i, 2)),
                        i + 1, 2);
        const double d1 = s.diag(i, 0) - ((i + 1 < mn) ? s.diag(i + 1, 0) : 0.0);
        const double d2 = s.diag(i, 1) - ((i + 1 < mn) ? s.diag(i + 1, 1) : 0.0);
        const double d3 = s.diag(i, 2) - ((i + 1 < mn) ? s.diag(i + 1, 2) : 0.0);
        decay.observe(d1 + d3 - std::max(2.0 * std::abs(d2), 2.0 * d3), i + 1, 2);
    }

    SDiagReport r;
    r.method = Method::DirectP4;
    r.tolerance = te;
    r.conditions.push_back(sym.result("mode3_symmetry_p4", te));
    r.conditions.push_back(leading.result("strong_leading_max_p4", te));
    r.conditions.push_back(decay.result("strong_slice_decay_p4", te));
    r.verdict = r.all_pass() ? Verdict::SDiagonal : Verdict::NotSDiagonal;
    return r;
}

/// Dispatcher: the necessary tier first (cheap rejection), then the direct
/// characterization for p in {2,3,4}, the general spectral one otherwise.
/// The necessary-tier condition results are kept in the report.
inline SDiagReport classify(const FDiagonal3& s, double tol = 1e-10)
{
    SDiagReport nec = check_necessary(s, tol);
    if (nec.verdict == Verdict::NotSDiagonal)
        return nec;

    SDiagReport fin;
    switch (s.depth()) {
        case 2: fin = check_direct_p2(s, tol); break;
        case 3: fin = check_direct_p3(s, tol); break;
        case 4: fin = check_direct_p4(s, tol); break;
        default: fin = check_general(s, tol); break;
    }
    fin.conditions.insert(fin.conditions.begin(), nec.conditions.begin(), nec.conditions.end());
    return fin;
}

/// Nonnegative combination of f-diagonal tensors.  The s-diagonal set is a
/// closed convex cone, so combinations of members stay members.
inline FDiagonal3 cone_combination(const std::vector<FDiagonal3>& ss,
                                   const std::vector<double>& weights)
{
    if (ss.empty() || ss.size() != weights.size())
        throw ShapeMismatch("cone_combination: need matching nonempty inputs and weights");
    for (double w : weights)
        if (w < 0.0)
            throw NegativeWeight("cone_combination: weight " + format_double(w));
    for (const auto& s : ss)
        if (!s.same_shape(ss.front()))
            throw ShapeMismatch("cone_combination: mixed shapes");

    FDiagonal3 out(ss.front().rows(), ss.front().cols(), ss.front().depth());
    for (size_t t = 0; t < ss.size(); ++t)
        for (int i = 0; i < out.min_mn(); ++i)
            for (int k = 0; k < out.depth(); ++k)
                out.diag(i, k) += weights[t] * ss[t].diag(i, k);
    return out;
}

}  // namespace tsvd

#endif
