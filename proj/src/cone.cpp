#include "cdimlab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdimlab/hyperbolicity.hpp"

namespace cdimlab {

namespace {

void check_base_id(const FiniteMetricSpace& base, PointId z) {
    if (z < 0 || z >= base.size()) fail(errc::bad_input, "base point id out of range");
}

}  // namespace

ConeSpace make_cone(FiniteMetricSpace base) {
    if (base.size() < 1) fail(errc::bad_input, "cone base must be nonempty");
    ConeSpace C;
    const double diam = base.diameter();
    C.mu = diam > 0.0 ? std::numbers::pi / diam : 0.0;
    C.base = std::move(base);
    return C;
}

double cone_distance(const ConeSpace& C, const ConePoint& x, const ConePoint& y) {
    if (x.t < 0.0 || y.t < 0.0) fail(errc::bad_input, "cone radius must be nonnegative");
    check_base_id(C.base, x.z);
    check_base_id(C.base, y.z);
    if (x.t == 0.0 || y.t == 0.0) return x.t + y.t;

    const double angle = std::clamp(C.mu * C.base.dist(x.z, y.z), 0.0, std::numbers::pi);
    if (angle == 0.0) return std::abs(x.t - y.t);
    if (angle == std::numbers::pi) return x.t + y.t;

    const double ch = std::cosh(x.t) * std::cosh(y.t) -
                      std::sinh(x.t) * std::sinh(y.t) * std::cos(angle);
    return std::acosh(std::max(1.0, ch));
}

PointId ConeSample::scale_up(PointId p, int k) const {
    if (p == 0) return 0;
    const int J = radius_steps;
    const int z = (p - 1) / J, j = (p - 1) % J + 1;
    const long long jk = static_cast<long long>(j) * k;
    if (jk > J) return -1;
    return 1 + z * J + static_cast<int>(jk) - 1;
}

ConeSample sample_cone(FiniteMetricSpace base, double t_max, double t_step,
                       const caps& limits) {
    if (!(t_step > 0.0)) fail(errc::bad_input, "radius step must be positive");
    if (t_max < t_step) fail(errc::bad_input, "radius grid needs at least one step");

    ConeSample S;
    S.cone = make_cone(std::move(base));
    S.t_step = t_step;
    S.radius_steps = static_cast<int>(std::floor(t_max / t_step + 1e-9));

    const int n = S.cone.base.size();
    const long long total = 1 + static_cast<long long>(n) * S.radius_steps;
    if (total > limits.space_points) fail(errc::cap_exceeded, "cone sample exceeds the point cap");

    S.points.reserve(static_cast<std::size_t>(total));
    S.points.push_back({0, 0.0});
    for (int z = 0; z < n; ++z)
        for (int j = 1; j <= S.radius_steps; ++j) S.points.push_back({z, j * t_step});

    const int N = static_cast<int>(total);
    std::vector<double> mat(static_cast<std::size_t>(N) * N, 0.0);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            const double d = cone_distance(S.cone, S.points[i], S.points[j]);
            mat[static_cast<std::size_t>(i) * N + j] = d;
            mat[static_cast<std::size_t>(j) * N + i] = d;
        }
    S.space = FiniteMetricSpace::from_matrix(N, std::move(mat));

    for (int p = 0; p < N; ++p)
        if (S.points[p].t >= 1.0 && S.points[p].t <= 2.0) S.annulus.push_back(p);
    return S;
}

AnnulusContraction annulus_contract(const ConeSample& S, const Covering& U, int k) {
    if (k < 1) fail(errc::bad_input, "contraction factor must be at least 1");
    const int N = static_cast<int>(S.points.size());
    for (const Subset& m : U.members)
        for (PointId p : m)
            if (p < 0 || p >= N)
                fail(errc::bad_input, "covering member indexes a point outside the sample");

    AnnulusContraction out;

    // preimage carrier: points whose k-fold radius is still on the grid
    for (PointId p = 0; p < N; ++p)
        if (S.scale_up(p, k) >= 0) out.contracted.carrier.push_back(p);
    for (PointId p : S.annulus)
        if (S.scale_up(p, k) < 0)
            fail(errc::bad_input, "radius grid too short to contract the annulus by k");

    std::vector<char> in_member(static_cast<std::size_t>(N));
    out.contracted.colors = U.colors;
    for (const Subset& m : U.members) {
        std::fill(in_member.begin(), in_member.end(), 0);
        for (PointId p : m) in_member[static_cast<std::size_t>(p)] = 1;
        Subset img;
        for (PointId p : out.contracted.carrier) {
            const PointId q = S.scale_up(p, k);
            if (in_member[static_cast<std::size_t>(q)]) img.push_back(p);
        }
        out.contracted.members.push_back(std::move(img));
    }

    out.restricted.carrier = S.annulus;
    for (std::size_t i = 0; i < out.contracted.members.size(); ++i) {
        Subset clipped;
        std::set_intersection(out.contracted.members[i].begin(),
                              out.contracted.members[i].end(), S.annulus.begin(),
                              S.annulus.end(), std::back_inserter(clipped));
        if (clipped.empty()) continue;
        out.restricted.members.push_back(std::move(clipped));
        if (U.colored()) out.restricted.colors.push_back(U.colors[i]);
    }
    out.stats = covering_stats(S.space, out.restricted);
    return out;
}

ProductCompareReport check_product_compare(const FiniteMetricSpace& X, PointId o, PointId g,
                                           PointId x1, PointId x2, double sigma) {
    if (sigma < 0.0) fail(errc::bad_input, "sigma must be nonnegative");
    for (PointId p : {o, g, x1, x2})
        if (p < 0 || p >= X.size()) fail(errc::bad_input, "point id out of range");
    const double og = X.dist(o, g);
    const double tol = kNumSlack * (1.0 + og);

    ProductCompareReport rep;
    rep.hypothesis_met = gromov_product(X, o, x1, g) >= og - sigma - tol &&
                         gromov_product(X, o, x2, g) >= og - sigma - tol;
    if (!rep.hypothesis_met) return rep;

    const double at_o = gromov_product(X, o, x1, x2);
    const double at_g = gromov_product(X, g, x1, x2);
    rep.slack_lower = at_g + og - at_o;
    rep.slack_upper = at_o + 2.0 * sigma - at_g - og;
    rep.pass = rep.slack_lower >= -tol && rep.slack_upper >= -tol;
    return rep;
}

long long VisualBoundaryModel::leaf_count() const {
    long long n = 1;
    for (int t = 0; t < depth; ++t) n *= branching;
    return n;
}

double VisualBoundaryModel::lambda_bound() const { return c * c * std::pow(a, rho); }

double VisualBoundaryModel::scale_floor() const { return std::min(1.0, 1.0 / lambda_bound()); }

VisualBoundaryModel make_boundary_model(int branching, int depth, double a, double c,
                                        double rho) {
    if (branching < 2) fail(errc::bad_input, "branching must be at least 2");
    if (depth < 1) fail(errc::bad_input, "depth must be at least 1");
    if (!(a > 1.0)) fail(errc::bad_input, "visual parameter a must exceed 1");
    if (c < 1.0) fail(errc::bad_input, "constant c must be at least 1");
    if (rho < 0.0) fail(errc::bad_input, "orbit radius must be nonnegative");
    long long n = 1;
    for (int t = 0; t < depth; ++t) {
        n *= branching;
        if (n > 4'000'000'000'000'000LL) fail(errc::bad_input, "tree has too many leaves");
    }
    VisualBoundaryModel M;
    M.branching = branching;
    M.depth = depth;
    M.a = a;
    M.c = c;
    M.rho = rho;
    return M;
}

namespace {

void check_leaf(const VisualBoundaryModel& M, long long leaf) {
    if (leaf < 0 || leaf >= M.leaf_count()) fail(errc::bad_input, "leaf index out of range");
}

// letters shared before the first difference, reading most significant first
int prefix_length(const VisualBoundaryModel& M, long long leaf, long long other) {
    long long div = M.leaf_count() / M.branching;
    for (int t = 0; t < M.depth; ++t) {
        if (leaf / div % M.branching != other / div % M.branching) return t;
        div /= M.branching;
    }
    return M.depth;
}

}  // namespace

double visual_distance(const VisualBoundaryModel& M, long long leaf, long long other) {
    check_leaf(M, leaf);
    check_leaf(M, other);
    if (leaf == other) return 0.0;
    return std::pow(M.a, -prefix_length(M, leaf, other));
}

FiniteMetricSpace boundary_space(const VisualBoundaryModel& M, const caps& limits) {
    const long long n = M.leaf_count();
    if (n > limits.space_points) fail(errc::cap_exceeded, "boundary sample exceeds the point cap");
    const int N = static_cast<int>(n);
    std::vector<double> mat(static_cast<std::size_t>(N) * N, 0.0);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            const double d = visual_distance(M, i, j);
            mat[static_cast<std::size_t>(i) * N + j] = d;
            mat[static_cast<std::size_t>(j) * N + i] = d;
        }
    return FiniteMetricSpace::from_matrix(N, std::move(mat));
}

QuasiHomothetyReport tree_boundary_selfsimilarity(const VisualBoundaryModel& M,
                                                  const std::vector<long long>& A, double R) {
    if (A.empty()) fail(errc::bad_input, "empty boundary subset");
    if (R < 1.0) fail(errc::bad_input, "coefficient R must be at least 1");
    std::vector<long long> pts = A;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (long long leaf : pts) check_leaf(M, leaf);

    if (pts.size() == 1) {
        QuasiHomothetyReport rep;
        rep.R = R;
        rep.lambda = 1.0;
        rep.worst.a = rep.worst.b = static_cast<int>(pts[0]);
        return rep;
    }

    // leaves sort lexicographically, so the set's common prefix is realized
    // by its extreme elements
    const int P = prefix_length(M, pts.front(), pts.back());
    const double diam = std::pow(M.a, -P);
    if (diam > M.scale_floor() / R * (1.0 + kNumSlack) + kNumSlack)
        fail(errc::precondition, "boundary subset too large for the requested coefficient");

    // whole-letter shift closest to log_a R; the precondition keeps it within
    // the common prefix
    const double j0 = std::log(R) / std::log(M.a);
    int shift = std::clamp(static_cast<int>(std::floor(j0)), 0, P);
    if (shift + 1 <= P) {
        const double lo = std::max(std::pow(M.a, shift) / R, R / std::pow(M.a, shift));
        const double hi = std::max(std::pow(M.a, shift + 1) / R, R / std::pow(M.a, shift + 1));
        if (hi < lo) ++shift;
    }

    long long keep = 1;
    for (int t = 0; t < M.depth - shift; ++t) keep *= M.branching;
    long long pad = 1;
    for (int t = 0; t < shift; ++t) pad *= M.branching;
    auto image = [&](long long leaf) { return leaf % keep * pad; };

    std::vector<DistancePair> pairs;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            DistancePair p;
            p.a = static_cast<int>(pts[i]);
            p.b = static_cast<int>(pts[j]);
            p.source = visual_distance(M, pts[i], pts[j]);
            p.image = visual_distance(M, image(pts[i]), image(pts[j]));
            pairs.push_back(p);
        }
    QuasiHomothetyReport rep = quasi_homothety_coefficient(pairs, R);
    if (rep.lambda > M.lambda_bound() * (1.0 + 1e-9))
        fail(errc::precondition,
             "model constants do not bound the shift coefficient; increase rho or c");
    return rep;
}

}  // namespace cdimlab
