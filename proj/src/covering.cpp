#include "cdimlab/covering.hpp"

#include <algorithm>
#include <cmath>

#include "cdimlab/common.hpp"

namespace cdimlab {

int Covering::color_count() const {
    int c = 0;
    for (int k : colors) c = std::max(c, k + 1);
    return c;
}

Subset full_carrier(const FiniteMetricSpace& X) {
    Subset all(static_cast<std::size_t>(X.size()));
    for (int i = 0; i < X.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
}

std::optional<PointId> first_uncovered(const FiniteMetricSpace& X, const Covering& C) {
    std::vector<char> hit(static_cast<std::size_t>(X.size()), 0);
    for (const Subset& u : C.members)
        for (PointId p : u) hit[static_cast<std::size_t>(p)] = 1;
    for (PointId p : C.carrier)
        if (!hit[static_cast<std::size_t>(p)]) return p;
    return std::nullopt;
}

namespace {

void check_valid(const FiniteMetricSpace& X, const Covering& C) {
    const auto n = static_cast<std::size_t>(X.size());
    for (const Subset& u : C.members) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] < 0 || static_cast<std::size_t>(u[i]) >= n)
                fail(errc::bad_input, "covering member references point " +
                                          std::to_string(u[i]) + " outside the space");
            if (i > 0 && u[i] <= u[i - 1])
                fail(errc::bad_input, "covering member ids must be sorted and unique");
        }
    }
    if (auto p = first_uncovered(X, C))
        fail(errc::bad_input,
             "covering misses carrier point " + std::to_string(*p));
    if (C.colored()) {
        if (C.colors.size() != C.members.size())
            fail(errc::bad_input, "color list length differs from member count");
        // Same-colored members must be pairwise disjoint. One pass per color
        // over a point->owner table keeps this linear in total member size.
        std::vector<int> owner(n, -1);
        const int nc = C.color_count();
        for (int c = 0; c < nc; ++c) {
            std::fill(owner.begin(), owner.end(), -1);
            for (std::size_t m = 0; m < C.members.size(); ++m) {
                if (C.colors[m] != c) continue;
                for (PointId p : C.members[m]) {
                    auto& slot = owner[static_cast<std::size_t>(p)];
                    if (slot >= 0)
                        fail(errc::bad_input,
                             "members " + std::to_string(slot) + " and " +
                                 std::to_string(m) + " share color " + std::to_string(c) +
                                 " but both contain point " + std::to_string(p));
                    slot = static_cast<int>(m);
                }
            }
        }
    }
}

}  // namespace

CoveringStats covering_stats(const FiniteMetricSpace& X, const Covering& C) {
    check_valid(X, C);
    CoveringStats st;

    for (const Subset& u : C.members)
        st.mesh = std::max(st.mesh, subset_diameter(X, u));

    const auto n = static_cast<std::size_t>(X.size());
    std::vector<int> depth(n, 0);
    for (const Subset& u : C.members)
        for (PointId p : u) ++depth[static_cast<std::size_t>(p)];
    for (int d : depth) st.multiplicity = std::max(st.multiplicity, d);

    // Lebesgue number: for each carrier point the best clearance any member
    // gives it, then the worst such value. A member equal to the whole space
    // has empty complement; it shelters every point at infinite depth.
    std::vector<char> in_member(n, 0);
    double leb = kInf;
    bool some_full = false;
    std::vector<double> best(n, 0.0);
    for (const Subset& u : C.members) {
        if (u.size() == n) {
            some_full = true;
            continue;
        }
        std::fill(in_member.begin(), in_member.end(), 0);
        for (PointId p : u) in_member[static_cast<std::size_t>(p)] = 1;
        for (PointId p : u) {
            double clearance = kInf;
            const auto& row = X.dist_row(p);
            for (std::size_t w = 0; w < n; ++w)
                if (!in_member[w]) clearance = std::min(clearance, row[w]);
            auto& b = best[static_cast<std::size_t>(p)];
            b = std::max(b, clearance);
        }
    }
    if (some_full) {
        st.lebesgue_infinite = true;
        st.lebesgue = kInf;
        return st;
    }
    for (PointId p : C.carrier) leb = std::min(leb, best[static_cast<std::size_t>(p)]);
    st.lebesgue = (C.carrier.empty() ? kInf : leb);
    st.lebesgue_infinite = !std::isfinite(st.lebesgue);
    return st;
}

Covering shrink_cover(const FiniteMetricSpace& X, const Covering& C, double s) {
    if (s < 0.0) fail(errc::bad_input, "shrink amount must be nonnegative");
    Covering out;
    out.carrier = C.carrier;
    for (std::size_t m = 0; m < C.members.size(); ++m) {
        Subset v = neighborhood(X, C.members[m], -s);
        if (v.empty()) continue;
        out.members.push_back(std::move(v));
        if (C.colored()) out.colors.push_back(C.colors[m]);
    }
    // shrinking by less than the Lebesgue number keeps every carrier point
    // sheltered; anything larger may legitimately break coverage
    if (auto p = first_uncovered(X, out))
        fail(errc::precondition, "shrink broke coverage at point " + std::to_string(*p));
    return out;
}

}  // namespace cdimlab
