#include "cdimlab/cover_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cdimlab {

Subset maximal_separated_net(const FiniteMetricSpace& X, double r, const Subset& order) {
    if (!(r > 0.0)) fail(errc::bad_input, "net separation must be positive");
    Subset net;
    for (PointId z : order) {
        if (z < 0 || z >= X.size()) fail(errc::bad_input, "net order references a bad id");
        bool separated = true;
        for (PointId c : net) {
            if (X.dist(z, c) <= r) {
                separated = false;
                break;
            }
        }
        if (separated) net.push_back(z);
    }
    return net;
}

Subset maximal_separated_net(const FiniteMetricSpace& X, double r) {
    return maximal_separated_net(X, r, full_carrier(X));
}

Covering doubling_colored_cover(const FiniteMetricSpace& X, double r) {
    if (!(r > 0.0)) fail(errc::bad_input, "ball radius parameter must be positive");
    const Subset net = maximal_separated_net(X, r);

    Covering C;
    C.carrier = full_carrier(X);
    C.members.reserve(net.size());
    for (PointId c : net) {
        Subset ball;
        const auto& row = X.dist_row(c);
        for (PointId z = 0; z < X.size(); ++z)
            if (row[z] < 2.0 * r) ball.push_back(z);
        C.members.push_back(std::move(ball));
    }

    // first-fit coloring of the center conflict graph (centers closer than 4r)
    C.colors.assign(net.size(), -1);
    for (std::size_t i = 0; i < net.size(); ++i) {
        std::vector<char> used;
        for (std::size_t j = 0; j < i; ++j) {
            if (X.dist(net[i], net[j]) < 4.0 * r) {
                std::size_t cj = static_cast<std::size_t>(C.colors[j]);
                if (cj >= used.size()) used.resize(cj + 1, 0);
                used[cj] = 1;
            }
        }
        int col = 0;
        while (static_cast<std::size_t>(col) < used.size() && used[col]) ++col;
        C.colors[i] = col;
    }
    return C;
}

MergeReport merge_coverings(const FiniteMetricSpace& X, const Covering& U, const Covering& V) {
    const CoveringStats su = covering_stats(X, U);
    const CoveringStats sv = covering_stats(X, V);

    MergeReport rep;
    if (su.lebesgue_infinite) {
        // some member of U is the whole space; nothing to merge
        rep.result = U;
        rep.result.colors.clear();
        rep.result.carrier = U.carrier;
        for (PointId p : V.carrier) rep.result.carrier.push_back(p);
        std::sort(rep.result.carrier.begin(), rep.result.carrier.end());
        rep.result.carrier.erase(
            std::unique(rep.result.carrier.begin(), rep.result.carrier.end()),
            rep.result.carrier.end());
        return rep;
    }
    if (sv.mesh > su.lebesgue / 2.0)
        fail(errc::precondition, "mesh(V) exceeds L(U)/2: " + std::to_string(sv.mesh) + " > " +
                                     std::to_string(su.lebesgue / 2.0));

    const double r = su.lebesgue / 2.0;
    std::vector<Subset> shrunk;
    shrunk.reserve(U.members.size());
    for (const Subset& u : U.members) shrunk.push_back(neighborhood(X, u, -r));

    // lowest shrunken-U index through each point, for the absorption rule
    std::vector<int> first_at(static_cast<std::size_t>(X.size()), -1);
    for (int ui = static_cast<int>(shrunk.size()) - 1; ui >= 0; --ui)
        for (PointId p : shrunk[static_cast<std::size_t>(ui)])
            first_at[static_cast<std::size_t>(p)] = ui;

    std::vector<Subset> grown = shrunk;
    std::vector<Subset> kept;
    for (std::size_t vi = 0; vi < V.members.size(); ++vi) {
        int target = -1;
        for (PointId p : V.members[vi]) {
            int ui = first_at[static_cast<std::size_t>(p)];
            if (ui >= 0 && (target < 0 || ui < target)) target = ui;
        }
        if (target < 0) {
            kept.push_back(V.members[vi]);
        } else {
            Subset& w = grown[static_cast<std::size_t>(target)];
            w.insert(w.end(), V.members[vi].begin(), V.members[vi].end());
            rep.absorbed.emplace_back(static_cast<int>(vi), target);
        }
    }

    Covering& W = rep.result;
    for (Subset& w : grown) {
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
        if (!w.empty()) W.members.push_back(std::move(w));
    }
    for (Subset& w : kept) W.members.push_back(std::move(w));

    W.carrier = U.carrier;
    W.carrier.insert(W.carrier.end(), V.carrier.begin(), V.carrier.end());
    std::sort(W.carrier.begin(), W.carrier.end());
    W.carrier.erase(std::unique(W.carrier.begin(), W.carrier.end()), W.carrier.end());
    return rep;
}

Covering amalgamate_colored(const FiniteMetricSpace& X, const std::vector<Covering>& families) {
    std::vector<const Covering*> live;
    for (const Covering& f : families)
        if (!(f.members.empty() && f.carrier.empty())) live.push_back(&f);
    if (live.empty()) fail(errc::bad_input, "no nonempty families to amalgamate");

    // ladder property between consecutive families, checked up front so the
    // failure names the family instead of surfacing as a merge error later
    std::vector<CoveringStats> st;
    st.reserve(live.size());
    for (const Covering* f : live) st.push_back(covering_stats(X, *f));
    for (std::size_t a = 0; a + 1 < live.size(); ++a) {
        double bound = std::min(st[a].lebesgue, st[a].mesh) / 2.0;
        if (st[a + 1].mesh > bound * (1.0 + kNumSlack))
            fail(errc::precondition,
                 "amalgamation ladder fails at family " + std::to_string(a) + ": next mesh " +
                     std::to_string(st[a + 1].mesh) + " > " + std::to_string(bound));
    }

    Covering acc = *live.front();
    for (std::size_t a = 1; a < live.size(); ++a)
        acc = merge_coverings(X, acc, *live[a]).result;
    acc.colors.clear();
    return acc;
}

namespace {

// enforce the provider's contract on all pairs of the member sample
void check_quasi_homothety(const FiniteMetricSpace& Z, const FiniteMetricSpace& Y,
                           const Subset& member, const std::vector<PointId>& image,
                           double coefficient, double lambda, std::size_t member_index) {
    if (image.size() != member.size())
        fail(errc::precondition, "provider returned a map of the wrong arity for member " +
                                     std::to_string(member_index));
    for (PointId q : image)
        if (q < 0 || q >= Y.size())
            fail(errc::precondition, "provider map for member " + std::to_string(member_index) +
                                         " leaves the model space");
    for (std::size_t i = 0; i < member.size(); ++i) {
        for (std::size_t j = i + 1; j < member.size(); ++j) {
            double d = Z.dist(member[i], member[j]);
            double di = Y.dist(image[i], image[j]);
            double lo = coefficient * d / lambda;
            double hi = lambda * coefficient * d;
            if (di < lo * (1.0 - kNumSlack) || di > hi * (1.0 + kNumSlack))
                fail(errc::precondition,
                     "map for member " + std::to_string(member_index) +
                         " is not a quasi-homothety at coefficient " +
                         std::to_string(coefficient));
        }
    }
}

}  // namespace

Covering refine_via_selfsimilarity(const FiniteMetricSpace& Z, const Covering& V,
                                   const FiniteMetricSpace& Y,
                                   const std::vector<Covering>& model_covers,
                                   const QuasiHomothetyProvider& provider,
                                   const ScaleParams& params) {
    if (!(params.delta > 0.0 && params.delta < 1.0))
        fail(errc::bad_input, "delta must lie in (0,1)");
    const double scale = params.large_scale ? params.R : params.tau;
    if (params.large_scale ? !(params.R > 1.0) : !(params.tau > 0.0))
        fail(errc::bad_input, params.large_scale ? "R must exceed 1" : "tau must be positive");
    if (!V.colored()) fail(errc::bad_input, "input covering must be colored");
    const int ncolors = V.color_count();
    if (model_covers.size() != static_cast<std::size_t>(ncolors))
        fail(errc::bad_input, "need one model cover per color: " + std::to_string(ncolors) +
                                  " colors, " + std::to_string(model_covers.size()) + " covers");
    const double lambda = provider.lambda;
    if (!(lambda >= 1.0)) fail(errc::bad_input, "provider lambda must be >= 1");

    const CoveringStats sv = covering_stats(Z, V);
    if (sv.mesh > scale * (1.0 + kNumSlack))
        fail(errc::precondition, "input covering mesh exceeds the scale");
    if (!sv.lebesgue_infinite && sv.lebesgue < params.delta * scale * (1.0 - kNumSlack))
        fail(errc::precondition, "input covering Lebesgue number is below delta * scale");

    // model-cover conditions: a small first mesh, then the ladder with the
    // lambda^2 safety factor that survives the distance distortion
    std::vector<CoveringStats> ms;
    ms.reserve(model_covers.size());
    for (const Covering& mc : model_covers) ms.push_back(covering_stats(Y, mc));
    double first_bound = params.delta / (2.0 * lambda);
    if (params.large_scale) first_bound /= provider.lambda0;
    if (ms[0].mesh > first_bound * (1.0 + kNumSlack))
        fail(errc::precondition, "model cover 0 mesh " + std::to_string(ms[0].mesh) +
                                     " exceeds " + std::to_string(first_bound));
    for (std::size_t a = 0; a + 1 < ms.size(); ++a) {
        double bound = std::min(ms[a].lebesgue, ms[a].mesh) / (2.0 * lambda * lambda);
        if (ms[a + 1].mesh > bound * (1.0 + kNumSlack))
            fail(errc::precondition,
                 "model covers break the ladder between " + std::to_string(a) + " and " +
                     std::to_string(a + 1));
    }

    const double shrink_by = params.delta * scale / 2.0;
    const double coefficient =
        params.large_scale ? provider.lambda0 * params.R : 1.0 / params.tau;
    if (!provider.map_for) fail(errc::bad_input, "provider has no map rule");

    // Per-color pullback families. Each piece of V is mapped whole; its core
    // (the piece shrunk by delta*scale/2) decides which model members count
    // as meeting the piece and contributes the carrier, while the members are
    // full-piece preimages. Keeping the full piece is what lets the Lebesgue
    // number of the pullback scale with the model instead of collapsing at
    // the core's cut line.
    std::vector<Covering> fams(static_cast<std::size_t>(ncolors));
    std::vector<char> in_model_member(static_cast<std::size_t>(Y.size()), 0);
    std::vector<char> in_core(0);
    for (std::size_t vi = 0; vi < V.members.size(); ++vi) {
        const Subset& piece = V.members[vi];
        const Subset core = neighborhood(Z, piece, -shrink_by);
        if (core.empty()) continue;
        const int color = V.colors[vi];
        Covering& fam = fams[static_cast<std::size_t>(color)];
        fam.carrier.insert(fam.carrier.end(), core.begin(), core.end());

        std::vector<PointId> image = provider.map_for(piece, coefficient);
        if (image.empty())
            fail(errc::precondition,
                 "no quasi-homothety available for member " + std::to_string(vi));
        check_quasi_homothety(Z, Y, piece, image, coefficient, lambda, vi);

        in_core.assign(static_cast<std::size_t>(Z.size()), 0);
        for (PointId p : core) in_core[static_cast<std::size_t>(p)] = 1;

        for (const Subset& mu : model_covers[static_cast<std::size_t>(color)].members) {
            for (PointId q : mu) in_model_member[static_cast<std::size_t>(q)] = 1;
            Subset pull;
            bool meets_core = false;
            for (std::size_t t = 0; t < piece.size(); ++t) {
                if (in_model_member[static_cast<std::size_t>(image[t])]) {
                    pull.push_back(piece[t]);
                    if (in_core[static_cast<std::size_t>(piece[t])]) meets_core = true;
                }
            }
            for (PointId q : mu) in_model_member[static_cast<std::size_t>(q)] = 0;
            if (meets_core) fam.members.push_back(std::move(pull));
        }
    }
    for (Covering& fam : fams) {
        std::sort(fam.carrier.begin(), fam.carrier.end());
        fam.carrier.erase(std::unique(fam.carrier.begin(), fam.carrier.end()),
                          fam.carrier.end());
    }

    Covering out = amalgamate_colored(Z, fams);
    out.carrier = V.carrier;
    if (auto p = first_uncovered(Z, out))
        fail(errc::internal, "refinement lost carrier point " + std::to_string(*p));
    return out;
}

PushforwardReport pushforward_cover(const FiniteMetricSpace& X, const Covering& U,
                                    const FiniteMetricSpace& Y, const SampledMap& h,
                                    double eps) {
    if (eps < 0.0) fail(errc::bad_input, "eps must be nonnegative");
    if (h.image.size() != h.domain.size())
        fail(errc::bad_input, "sampled map image and domain sizes differ");

    std::vector<PointId> image_of(static_cast<std::size_t>(X.size()), -1);
    for (std::size_t i = 0; i < h.domain.size(); ++i) {
        PointId p = h.domain[i];
        PointId q = h.image[i];
        if (p < 0 || p >= X.size() || q < 0 || q >= Y.size())
            fail(errc::bad_input, "sampled map references bad ids");
        image_of[static_cast<std::size_t>(p)] = q;
    }

    // image covering over the pushed carrier
    Covering HU;
    for (PointId p : U.carrier) {
        if (image_of[static_cast<std::size_t>(p)] < 0)
            fail(errc::bad_input, "carrier point " + std::to_string(p) + " has no image");
        HU.carrier.push_back(image_of[static_cast<std::size_t>(p)]);
    }
    std::sort(HU.carrier.begin(), HU.carrier.end());
    HU.carrier.erase(std::unique(HU.carrier.begin(), HU.carrier.end()), HU.carrier.end());
    std::vector<int> origin;
    for (std::size_t m = 0; m < U.members.size(); ++m) {
        Subset im;
        for (PointId p : U.members[m]) {
            if (image_of[static_cast<std::size_t>(p)] < 0)
                fail(errc::bad_input, "member point " + std::to_string(p) + " has no image");
            im.push_back(image_of[static_cast<std::size_t>(p)]);
        }
        std::sort(im.begin(), im.end());
        im.erase(std::unique(im.begin(), im.end()), im.end());
        if (!im.empty()) {
            HU.members.push_back(std::move(im));
            origin.push_back(static_cast<int>(m));
        }
    }

    // eps-density of the image in Y
    for (PointId y = 0; y < Y.size(); ++y) {
        const auto& row = Y.dist_row(y);
        bool near = false;
        for (PointId q : HU.carrier) {
            if (eps == 0.0 ? row[q] == 0.0 : row[q] < eps) {
                near = true;
                break;
            }
        }
        if (!near)
            fail(errc::precondition,
                 "image is not eps-dense: point " + std::to_string(y) + " is isolated");
    }

    // The image covering lives on the subspace h(A): its Lebesgue number and
    // the 2*eps shrink take complements there, not in Y, where an image that
    // is dense-but-sparse would have no room at all. Only the final
    // eps-enlargement acts in the ambient space.
    const FiniteMetricSpace S = Y.restrict(HU.carrier);
    auto to_sub = [&](const Subset& ys) {
        Subset out;
        out.reserve(ys.size());
        for (PointId y : ys) {
            auto it = std::lower_bound(HU.carrier.begin(), HU.carrier.end(), y);
            out.push_back(static_cast<PointId>(it - HU.carrier.begin()));
        }
        return out;
    };
    Covering HUs;
    HUs.carrier = full_carrier(S);
    for (const Subset& mu : HU.members) HUs.members.push_back(to_sub(mu));

    const CoveringStats sh = covering_stats(S, HUs);
    if (!sh.lebesgue_infinite && sh.lebesgue < 4.0 * eps * (1.0 - kNumSlack))
        fail(errc::precondition, "image covering Lebesgue number " +
                                     std::to_string(sh.lebesgue) + " is below 4*eps");

    PushforwardReport rep;
    rep.result.carrier = full_carrier(Y);
    for (std::size_t m = 0; m < HUs.members.size(); ++m) {
        Subset v = neighborhood(S, HUs.members[m], -2.0 * eps);
        if (v.empty()) continue;
        for (PointId& p : v) p = HU.carrier[static_cast<std::size_t>(p)];
        v = neighborhood(Y, v, eps);
        rep.result.members.push_back(std::move(v));
        rep.source_member.push_back(origin[m]);
    }
    if (auto p = first_uncovered(Y, rep.result))
        fail(errc::internal, "pushforward lost coverage at point " + std::to_string(*p));
    return rep;
}

}  // namespace cdimlab
