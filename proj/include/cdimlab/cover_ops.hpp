#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cdimlab/covering.hpp"

namespace cdimlab {

// Greedy maximal r-separated subset: a point joins the net when its distance
// to every earlier net point exceeds r. Every point of X ends up within r of
// the net. `order` fixes the scan order (and therefore the result).
Subset maximal_separated_net(const FiniteMetricSpace& X, double r, const Subset& order);
Subset maximal_separated_net(const FiniteMetricSpace& X, double r);  // ascending ids

// Colored covering by open 2r-balls around a maximal r-net. Net points closer
// than 4r conflict and get different colors (greedy first-fit in net order),
// which makes same-colored balls disjoint. Mesh <= 4r and Lebesgue >= r.
Covering doubling_colored_cover(const FiniteMetricSpace& X, double r);

struct MergeReport {
    Covering result;
    // (v_index, u_index): member v of V was absorbed into shrunken member u of U
    std::vector<std::pair<int, int>> absorbed;
};

// Merge of two coverings with controlled damage, hypothesis mesh(V) <= L(U)/2:
// shrink U by L(U)/2, absorb every V-member meeting a shrunken U-member into
// the lowest-indexed one it meets, keep the rest of V. The result covers the
// union of the carriers with multiplicity <= max of the input multiplicities,
// mesh <= max of the meshes, and Lebesgue >= min(L(U)/2, L(V)). A covering U
// with infinite Lebesgue number is returned unchanged.
MergeReport merge_coverings(const FiniteMetricSpace& X, const Covering& U, const Covering& V);

// Sequential merge of a scale ladder of coverings: the result covers the union
// of all carriers with multiplicity bounded by the worst input multiplicity,
// mesh <= mesh of the first family, and Lebesgue >= min over a of
// 2^(a-N) * L(U_a). Requires the ladder property
//   mesh(U_{a+1}) <= min(L(U_a), mesh(U_a)) / 2
// for consecutive families. Families with no members and no carrier are
// skipped (callers that care can warn; see the CLI).
Covering amalgamate_colored(const FiniteMetricSpace& X, const std::vector<Covering>& families);

// Supplies, per member subset of Z, a sampled map into the model space Y that
// multiplies distances by `coefficient` up to the factor lambda both ways.
// map_for returns image ids parallel to the member's ids; an empty vector
// means no map is available for that member.
struct QuasiHomothetyProvider {
    double lambda = 1.0;
    double lambda0 = 1.0;  // outer coefficient for the large-scale mode
    std::function<std::vector<PointId>(const Subset& member, double coefficient)> map_for;
};

// Scale parameters. Small-scale mode reads tau, large-scale mode reads R;
// delta is the Lebesgue-to-mesh ratio demanded of the input covering.
struct ScaleParams {
    double tau = 0.0;
    double R = 0.0;
    double delta = 0.0;
    bool large_scale = false;
};

// The colored-refinement pipeline: map each member of the colored covering V
// into the model space, pull back the model members of its color that meet
// the image of the member's core (the member shrunk by delta*scale/2), and
// merge the per-color pullback families. Preconditions: V has mesh <= scale
// and Lebesgue >= delta*scale; model cover 0 has mesh <= delta/(2*lambda)
// (divided by lambda0 in large-scale mode); consecutive model covers satisfy
// the amalgamation ladder property with an extra 1/lambda^2 factor. Every
// output member lands inside a single V-member.
Covering refine_via_selfsimilarity(const FiniteMetricSpace& Z, const Covering& V,
                                   const FiniteMetricSpace& Y,
                                   const std::vector<Covering>& model_covers,
                                   const QuasiHomothetyProvider& provider,
                                   const ScaleParams& params);

// A map between samples given pointwise: image[i] is the target id of domain[i].
struct SampledMap {
    Subset domain;
    std::vector<PointId> image;
};

struct PushforwardReport {
    Covering result;
    std::vector<int> source_member;  // result member -> index of the input member
};

// Transfers a covering through a sampled map h whose image is eps-dense in Y:
// push members forward, shrink by 2*eps within the image subspace, enlarge by
// eps in Y. Requires the image covering (complements in the image subspace)
// to have Lebesgue number >= 4*eps. Covers all of Y; multiplicity does not
// exceed the image covering's; mesh exceeds the image covering's by at most
// 2*eps (and not at all when members are interval-like).
PushforwardReport pushforward_cover(const FiniteMetricSpace& X, const Covering& U,
                                    const FiniteMetricSpace& Y, const SampledMap& h,
                                    double eps);

}  // namespace cdimlab
