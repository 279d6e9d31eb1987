#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dyadic.hpp"
#include "errors.hpp"
#include "hilbert.hpp"
#include "interval.hpp"
#include "metric_space.hpp"
#include "numbers.hpp"
#include "universal.hpp"

namespace unimetric {

/// Requested refinement depth cannot honor the guarantees; minimal_k() is the
/// smallest depth that can.
class DepthError : public Error {
public:
    DepthError(const std::string& message, int minimal_k) : Error("depth", message), minimal_k_(minimal_k) {}

    int minimal_k() const noexcept { return minimal_k_; }

private:
    int minimal_k_;
};

/// Distance-to-landmarks map: point i of X goes to
/// (d(x_i, x_1), ..., d(x_i, x_p), 0, ..., 0) in [0, n]^n. An isometry of X
/// into the cube under the sup metric; needs n >= p (coordinates fit) and
/// n >= diam (values fit).
inline std::vector<CubePoint> kuratowski(const FiniteMetricSpace& X, int n) {
    curve_detail::check_dimension(n);
    int p = X.size();
    if (n < p) throw Error("domain", "dimension too small: need n >= " + std::to_string(p) + " points");
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (X.dist[static_cast<size_t>(i)][static_cast<size_t>(j)] > n)
                throw Error("domain", "dimension too small: diameter exceeds " + std::to_string(n));
    std::vector<CubePoint> targets;
    targets.reserve(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) {
        CubePoint t;
        t.dim = n;
        t.coords.assign(static_cast<size_t>(n), Rational(0));
        for (int j = 0; j < p; ++j) t.coords[static_cast<size_t>(j)] = X.dist[static_cast<size_t>(i)][static_cast<size_t>(j)];
        targets.push_back(std::move(t));
    }
    return targets;
}

/// A finite space embedded on the half line: parameter points in J_n plus the
/// intermediate data that certifies them.
struct EmbeddingResult {
    EmbeddingParams params;
    int depth = 0;
    Rational delta;                     // n * 2^-depth, the preimage residual bound
    std::vector<Dyadic> points;         // t_i in J_n
    std::vector<CubePoint> cube_images; // f_n(t_i), exact
    std::vector<CubePoint> targets;     // distance-to-landmarks images
};

/// Smallest depth k >= 1 with 4 * n * 2^-k < eps.
inline int minimal_depth(const EmbeddingParams& pr) {
    BigInt lhs = 4 * pr.n * denominator(pr.eps); // need 2^k * num(eps) > lhs
    int k = 1;
    while (pow2(static_cast<unsigned>(k)) * numerator(pr.eps) <= lhs) ++k;
    return k;
}

/// Default depth: smallest k with deviation bound 4 * n * 2^-k both below
/// eps (so embedded points stay distinct) and at most 10^-6.
inline int default_depth(const EmbeddingParams& pr) {
    int k = minimal_depth(pr);
    BigInt target = 4 * pr.n * detail::pow10(6); // need 2^k >= 4n * 10^6
    while (pow2(static_cast<unsigned>(k)) < target) ++k;
    return k;
}

/// Embed X into the half line at refinement depth k: map each point through
/// the distance-to-landmarks image, then to the depth-k curve preimage. The
/// residual sup_dist(f_n(t_i), target_i) <= delta, every pairwise distance
/// then deviates from d(t_i, t_j) by at most 4 * delta, and 4 * delta < eps
/// keeps the parameters pairwise distinct. Depths violating that bound are
/// rejected with the minimal sufficient depth.
inline EmbeddingResult embed_space(const FiniteMetricSpace& X, int k) {
    EmbeddingParams pr = params(X); // rejects p < 2
    if (pr.n > kMaxDimension)
        throw Error("scale", "derived dimension " + pr.n.str() + " exceeds supported maximum " +
                                 std::to_string(kMaxDimension));
    int n = static_cast<int>(pr.n);
    int kmin = minimal_depth(pr);
    if (k < kmin) {
        std::string detail = "depth must be >= 1";
        if (k >= 0) {
            Rational bound = Rational(4 * n) / Rational(pow2(static_cast<unsigned>(k)));
            detail = "deviation bound 4*delta = " + format_number(bound) + " not below eps = " +
                     format_number(pr.eps);
        }
        throw DepthError(detail + "; minimal depth: " + std::to_string(kmin), kmin);
    }
    EmbeddingResult res;
    res.params = pr;
    res.depth = k;
    res.delta = make_rational(n, pow2(static_cast<unsigned>(k)));
    res.targets = kuratowski(X, n);
    res.points.reserve(res.targets.size());
    res.cube_images.reserve(res.targets.size());
    for (const CubePoint& t : res.targets) {
        Dyadic pt = preimage(n, t, k);
        CubePoint img = curve_point_exact(n, pt);
        if (sup_dist(img, t) > res.delta) throw Error("internal", "preimage residual bound violated");
        res.points.push_back(pt);
        res.cube_images.push_back(std::move(img));
    }
    for (size_t i = 0; i < res.points.size(); ++i)
        for (size_t j = i + 1; j < res.points.size(); ++j)
            if (res.points[i] == res.points[j]) throw Error("internal", "embedded parameters collided");
    return res;
}

struct PairCertificate {
    int i = 0;
    int j = 0;
    Rational expected;      // d(x_i, x_j) in X
    DistInterval enclosure; // universal distance between the parameters
    Rational deviation;     // worst certified |enclosure - expected|
    bool ok = false;
    std::string note;
};

struct CertificationReport {
    Rational tol;
    Rational bound; // 4 * delta
    std::vector<PairCertificate> pairs;
    std::vector<std::string> issues; // non-pairwise failures (residuals, shape)
    bool pass = false;
    int worst_i = -1;
    int worst_j = -1;
    Rational worst_deviation;
};

/// Independently re-derive the embedding guarantee: every pairwise universal
/// distance must enclose within bound + tol of the original distance, the
/// stored cube images must match the residual bound, and parameters must be
/// pairwise distinct. Works on any EmbeddingResult, including hand-built ones.
inline CertificationReport certify(const FiniteMetricSpace& X, const EmbeddingResult& res, const Rational& tol) {
    if (tol <= 0) throw Error("domain", "tolerance must be positive");
    size_t p = static_cast<size_t>(X.size());
    if (res.points.size() != p || res.targets.size() != p || res.cube_images.size() != p)
        throw Error("domain", "embedding result does not match the space");
    CertificationReport rep;
    rep.tol = tol;
    rep.bound = 4 * res.delta;
    rep.worst_deviation = 0;
    for (size_t i = 0; i < p; ++i) {
        Rational resid = sup_dist(res.cube_images[i], res.targets[i]);
        if (resid > res.delta)
            rep.issues.push_back("point " + std::to_string(i) + ": image residual " + format_number(resid) +
                                 " exceeds delta " + format_number(res.delta));
    }
    for (size_t i = 0; i < p; ++i)
        for (size_t j = i + 1; j < p; ++j) {
            PairCertificate pc;
            pc.i = static_cast<int>(i);
            pc.j = static_cast<int>(j);
            pc.expected = X.dist[i][j];
            pc.enclosure = universal_dist(value(res.points[i]), value(res.points[j]), tol);
            Rational dev_hi = pc.enclosure.hi - pc.expected;
            Rational dev_lo = pc.expected - pc.enclosure.lo;
            pc.deviation = std::max(Rational(0), std::max(dev_hi, dev_lo));
            pc.ok = pc.deviation <= rep.bound + tol;
            if (res.points[i] == res.points[j]) {
                pc.ok = false;
                pc.note = "parameters coincide";
            }
            if (pc.deviation > rep.worst_deviation || rep.worst_i < 0) {
                rep.worst_deviation = pc.deviation;
                rep.worst_i = pc.i;
                rep.worst_j = pc.j;
            }
            rep.pairs.push_back(std::move(pc));
        }
    rep.pass = rep.issues.empty() &&
               std::all_of(rep.pairs.begin(), rep.pairs.end(), [](const PairCertificate& pc) { return pc.ok; });
    return rep;
}

} // namespace unimetric
