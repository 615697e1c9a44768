#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "reebmapper/mapper.hpp"
#include "reebmapper/preimage.hpp"

namespace reebmapper {

/// A Set-valued functor on open boxes realized through component sets,
/// with the canonical inclusion-induced arrows.  Evaluations are pure;
/// labels are stable across calls.
class ComponentFunctor {
public:
    virtual ~ComponentFunctor() = default;
    virtual ComponentSet eval(const Box& region) const = 0;
    virtual std::string name() const = 0;
    const RdSpace& space() const { return *space_; }

protected:
    explicit ComponentFunctor(std::shared_ptr<const RdSpace> space) : space_(std::move(space)) {}
    std::shared_ptr<const RdSpace> space_;
};

/// C = pi_0 f^{-1}: components over the box itself.
class DirectFunctor final : public ComponentFunctor {
public:
    explicit DirectFunctor(std::shared_ptr<const RdSpace> space) : ComponentFunctor(std::move(space)) {}
    ComponentSet eval(const Box& region) const override;
    std::string name() const override { return "direct"; }
};

/// The colimit evaluation realized directly: components
/// over the union of U_sigma for sigma in K_I.
class NerveUnionFunctor final : public ComponentFunctor {
public:
    NerveUnionFunctor(std::shared_ptr<const RdSpace> space, Cover cover, CoverNerve nerve)
        : ComponentFunctor(std::move(space)), cover_(std::move(cover)), nerve_(std::move(nerve)) {}
    ComponentSet eval(const Box& region) const override;
    std::string name() const override { return "nerve-union"; }
    const Cover& cover() const { return cover_; }
    const CoverNerve& nerve() const { return nerve_; }

private:
    Cover cover_;
    CoverNerve nerve_;
};

LabelMap functor_arrow(const ComponentFunctor& f, const Box& inner, const Box& outer);

/// Explicit eps-interleaving data: the phi/psi families over a finite
/// generator family (with the thickened generators the triangle
/// identities need) plus the nested pairs the naturality checks run on.
struct InterleavingWitness {
    std::shared_ptr<const ComponentFunctor> F;  // phi: F(I) -> G(I^eps)
    std::shared_ptr<const ComponentFunctor> G;  // psi: G(I) -> F(I^eps)
    double eps = 0.0;
    bool sampled = false;  // d >= 2 spot check rather than a full family

    std::vector<Box> generators;
    std::vector<std::pair<int, int>> nested_pairs;  // (inner, outer) generator indices
    std::vector<LabelMap> phi, psi;                 // at each generator
    std::vector<LabelMap> phi_thick, psi_thick;     // at each generator's eps-thickening
};

struct DiagramReport {
    bool pass = true;
    double eps = 0.0;
    bool sampled = false;
    int naturality_checked = 0;
    int naturality_failed = 0;
    int triangles_checked = 0;
    int triangles_failed = 0;
    int totality_failed = 0;

    struct Counterexample {
        std::string check;
        Box inner, outer;
        int source_label = -1;
        int expected = -1;
        int got = -1;
    };
    std::vector<Counterexample> counterexamples;  // capped at 16

    std::string summary() const;
};

struct GeneratorFamily {
    std::vector<Box> boxes;
    std::vector<std::pair<int, int>> nested_pairs;
    bool sampled = false;
};

/// d=1: all intervals with endpoints at midpoints of consecutive
/// breakpoints, where the breakpoints are cover endpoints, vertex
/// values, and their +-eps, +-2eps shifts.  Naturality pairs are the
/// single-step endpoint extensions (whose squares compose to every
/// nested pair) plus a seeded sample of long-range nestings.
/// d>=2: seeded random boxes at three scales with their nestings; the
/// verification is then a sampled check, not a proof.
GeneratorFamily interleave_generators(const RdSpace& space, const Cover& cover, double eps,
                                      int nd_count = 64, std::uint64_t seed = 2027);

/// Constructs the resolution interleaving at eps >= res(U): phi_I from
/// components over the K_I union into components over I^eps, psi_I from
/// components over I into the K_{I^eps} union, both realized by
/// component_map after asserting the containments the proof guarantees.
InterleavingWitness build_interleaving(const RdSpace& space, const Cover& cover, double eps = -1.0,
                                       int nd_count = 64, std::uint64_t seed = 2027);

/// Checks, with all maps composed exactly as finite set maps, the
/// naturality squares over every stored pair and both triangle
/// identities over every generator.  Failures are data in the report.
DiagramReport verify_interleaving(const InterleavingWitness& w);

/// Swap (F, G) and (phi, psi): verifies identically by symmetry.
InterleavingWitness swapped_witness(const InterleavingWitness& w);

/// The identity 0-witness on a single functor (reflexivity direction).
InterleavingWitness identity_witness(std::shared_ptr<const ComponentFunctor> functor,
                                     std::vector<Box> generators,
                                     std::vector<std::pair<int, int>> nested_pairs);

/// The witness induced at a larger eps by composing with thickening
/// arrows; verifies whenever the original does.
InterleavingWitness witness_at_eps(const InterleavingWitness& w, double larger_eps);

/// Installs a single image-label swap that breaks verification;
/// returns false when no single swap can break it (degenerate data).
bool corrupt_witness(InterleavingWitness& w, std::uint64_t seed = 1);

/// res(U) after a build + verify pass; throws CheckError when the
/// diagrams fail (an implementation bug, not a property of the input).
double certified_upper_bound(const RdSpace& space, const Cover& cover);

/// Cardinality-valued view used by the lower-bound probe.
class SetFunctor {
public:
    virtual ~SetFunctor() = default;
    virtual std::size_t value_size(const Box& region) const = 0;
    /// |image(F[I in J])|
    virtual std::size_t image_size(const Box& inner, const Box& outer) const = 0;
};

class ComponentSetFunctor final : public SetFunctor {
public:
    explicit ComponentSetFunctor(std::shared_ptr<const ComponentFunctor> f) : f_(std::move(f)) {}
    std::size_t value_size(const Box& region) const override;
    std::size_t image_size(const Box& inner, const Box& outer) const override;

private:
    std::shared_ptr<const ComponentFunctor> f_;
};

class PkSetFunctor final : public SetFunctor {
public:
    explicit PkSetFunctor(CategoricalMapper cm) : cm_(std::move(cm)) {}
    std::size_t value_size(const Box& region) const override;
    std::size_t image_size(const Box& inner, const Box& outer) const override;

private:
    CategoricalMapper cm_;
};

class EmptySetFunctor final : public SetFunctor {
public:
    std::size_t value_size(const Box&) const override { return 0; }
    std::size_t image_size(const Box&, const Box&) const override { return 0; }
};

/// Largest candidate eps at which some probe violates the necessary
/// condition |image(a(I) -> a(I^{2eps}))| <= |b(I^eps)|; 0 when no
/// violation is found, +infinity when images must factor through empty
/// sets even at the largest candidate.  Always <= the true d_I.
double cardinality_lower_bound(const SetFunctor& a, const SetFunctor& b, const std::vector<Box>& probes,
                               const std::vector<double>& candidate_grid);

std::vector<double> default_candidate_grid(double max_eps, int steps = 32);

}  // namespace reebmapper
