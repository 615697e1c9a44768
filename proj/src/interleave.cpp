#include "reebmapper/interleave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "reebmapper/errors.hpp"
#include "reebmapper/tolerance.hpp"

namespace reebmapper {

namespace {

constexpr std::size_t kMaxCounterexamples = 16;

void record_failure(DiagramReport& report, const std::string& check, const Box& inner, const Box& outer,
                    int source, int expected, int got) {
    report.pass = false;
    if (report.counterexamples.size() < kMaxCounterexamples) {
        report.counterexamples.push_back({check, inner, outer, source, expected, got});
    }
}

// expected == composed(second, first) on every source of `first`.
bool maps_equal(const LabelMap& first, const LabelMap& second, const LabelMap& expected, int* bad_source,
                int* bad_expected, int* bad_got) {
    if (first.size() != expected.size()) {
        *bad_source = first.empty() ? -1 : first.begin()->first;
        *bad_expected = static_cast<int>(expected.size());
        *bad_got = static_cast<int>(first.size());
        return false;
    }
    for (const auto& [src, mid] : first) {
        auto s = second.find(mid);
        auto e = expected.find(src);
        if (s == second.end() || e == expected.end() || s->second != e->second) {
            *bad_source = src;
            *bad_expected = e == expected.end() ? -1 : e->second;
            *bad_got = s == second.end() ? -1 : s->second;
            return false;
        }
    }
    return true;
}

}  // namespace

ComponentSet DirectFunctor::eval(const Box& region) const {
    return components(*space_, ActiveRegion::single(region));
}

ComponentSet NerveUnionFunctor::eval(const Box& region) const {
    return f_direct(*space_, cover_, nerve_, region);
}

LabelMap functor_arrow(const ComponentFunctor& f, const Box& inner, const Box& outer) {
    return component_map(f.space(), f.eval(inner), f.eval(outer));
}

std::string DiagramReport::summary() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " eps=" << eps << (sampled ? " [sampled]" : "")
       << " naturality=" << naturality_checked - naturality_failed << "/" << naturality_checked
       << " triangles=" << triangles_checked - triangles_failed << "/" << triangles_checked;
    if (totality_failed) os << " totality_failures=" << totality_failed;
    return os.str();
}

GeneratorFamily interleave_generators(const RdSpace& space, const Cover& cover, double eps, int nd_count,
                                      std::uint64_t seed) {
    GeneratorFamily out;
    const int d = space.dim_range();
    if (d == 1) {
        std::vector<double> base;
        for (const Box& b : cover.elements) {
            base.push_back(b.axes[0].lo);
            base.push_back(b.axes[0].hi);
        }
        for (const auto& v : space.map.values) base.push_back(v[0]);
        std::vector<double> breaks;
        for (double v : base) {
            breaks.push_back(v);
            if (eps > 0.0) {
                breaks.push_back(v - eps);
                breaks.push_back(v + eps);
                breaks.push_back(v - 2.0 * eps);
                breaks.push_back(v + 2.0 * eps);
            }
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end(),
                                 [](double a, double b) { return std::abs(a - b) <= tolerance(); }),
                     breaks.end());
        std::vector<double> mids;
        for (size_t i = 0; i + 1 < breaks.size(); ++i) mids.push_back((breaks[i] + breaks[i + 1]) / 2.0);
        const int k = static_cast<int>(mids.size());
        std::vector<std::vector<int>> at(k, std::vector<int>(k, -1));
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                at[i][j] = static_cast<int>(out.boxes.size());
                out.boxes.push_back(Box::interval(mids[i], mids[j]));
            }
        }
        // Single-step endpoint extensions; their naturality squares
        // compose to the square of every nested pair.
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (i > 0) out.nested_pairs.emplace_back(at[i][j], at[i - 1][j]);
                if (j + 1 < k) out.nested_pairs.emplace_back(at[i][j], at[i][j + 1]);
            }
        }
        // A seeded sample of long-range nestings as extra assurance.
        if (k >= 4) {
            std::mt19937_64 rng(seed);
            for (int t = 0; t < 200; ++t) {
                int i = static_cast<int>(rng() % k);
                int j = static_cast<int>(rng() % k);
                if (i > j) std::swap(i, j);
                if (i == j) continue;
                int oi = static_cast<int>(rng() % (i + 1));
                int oj = j + static_cast<int>(rng() % (k - j));
                if (oi == i && oj == j) continue;
                out.nested_pairs.emplace_back(at[i][j], at[oi][oj]);
            }
        }
        return out;
    }

    // d >= 2: sampled boxes at three scales, each with a shrunken twin
    // so nestings always exist, plus every containment that arises.
    out.sampled = true;
    Box bbox = image_bounding_box(space);
    const double res = resolution(cover);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double scales[3] = {res / 2.0, res, 2.0 * res};
    while (static_cast<int>(out.boxes.size()) < nd_count) {
        Box b;
        b.axes.resize(d);
        double scale = scales[rng() % 3];
        for (int axis = 0; axis < d; ++axis) {
            double span = bbox.axes[axis].hi - bbox.axes[axis].lo;
            double c = bbox.axes[axis].lo - 0.5 * res + unit(rng) * (span + res);
            double half = scale * (0.35 + 0.65 * unit(rng));
            b.axes[axis] = {c - half, c + half};
        }
        out.boxes.push_back(b);
        if (static_cast<int>(out.boxes.size()) < nd_count) {
            Box inner = b;
            for (int axis = 0; axis < d; ++axis) {
                double quarter = (b.axes[axis].hi - b.axes[axis].lo) / 4.0;
                inner.axes[axis] = {b.axes[axis].lo + quarter, b.axes[axis].hi - quarter};
            }
            out.boxes.push_back(inner);
        }
    }
    for (size_t i = 0; i < out.boxes.size(); ++i) {
        for (size_t j = 0; j < out.boxes.size(); ++j) {
            if (i != j && box_contains(out.boxes[j], out.boxes[i])) {
                out.nested_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return out;
}

InterleavingWitness build_interleaving(const RdSpace& space, const Cover& cover, double eps, int nd_count,
                                       std::uint64_t seed) {
    const double res = resolution(cover);
    if (eps < 0.0) eps = res;
    if (eps + 1e-12 < res) {
        throw PreconditionError("interleaving eps below the cover resolution");
    }

    InterleavingWitness w;
    auto space_ptr = std::make_shared<RdSpace>(space);
    CoverNerve nerve = nerve_of_cover(cover);
    w.F = std::make_shared<NerveUnionFunctor>(space_ptr, cover, nerve);
    w.G = std::make_shared<DirectFunctor>(space_ptr);
    w.eps = eps;

    GeneratorFamily family = interleave_generators(space, cover, eps, nd_count, seed);
    w.generators = std::move(family.boxes);
    w.nested_pairs = std::move(family.nested_pairs);
    w.sampled = family.sampled;

    const double tol = tolerance();
    w.phi.reserve(w.generators.size());
    w.psi.reserve(w.generators.size());
    w.phi_thick.reserve(w.generators.size());
    w.psi_thick.reserve(w.generators.size());
    for (const Box& gen : w.generators) {
        const Box thick = thicken(gen, eps);
        const Box thick2 = thicken(gen, 2.0 * eps);
        // Resolution containment: every U_sigma meeting I sits inside I^eps.
        for (int sid : k_sub(cover, nerve, gen)) {
            const Box& u = nerve.intersection_box[sid];
            for (int axis = 0; axis < u.dim(); ++axis) {
                if (u.axes[axis].lo < thick.axes[axis].lo - tol ||
                    u.axes[axis].hi > thick.axes[axis].hi + tol) {
                    throw InternalError("resolution containment violated: U_sigma not inside I^eps");
                }
            }
        }
        w.phi.push_back(component_map(space, w.F->eval(gen), w.G->eval(thick)));
        w.psi.push_back(component_map(space, w.G->eval(gen), w.F->eval(thick)));
        w.phi_thick.push_back(component_map(space, w.F->eval(thick), w.G->eval(thick2)));
        w.psi_thick.push_back(component_map(space, w.G->eval(thick), w.F->eval(thick2)));
    }
    return w;
}

DiagramReport verify_interleaving(const InterleavingWitness& w) {
    DiagramReport report;
    report.eps = w.eps;
    report.sampled = w.sampled;
    const ComponentFunctor& F = *w.F;
    const ComponentFunctor& G = *w.G;

    for (size_t g = 0; g < w.generators.size(); ++g) {
        const Box& gen = w.generators[g];
        const Box thick = thicken(gen, w.eps);
        const Box thick2 = thicken(gen, 2.0 * w.eps);

        ComponentSet f_i = F.eval(gen);
        ComponentSet g_i = G.eval(gen);
        if (w.phi[g].size() != f_i.size() || w.psi[g].size() != g_i.size()) {
            ++report.totality_failed;
            record_failure(report, "totality", gen, thick, -1, static_cast<int>(f_i.size()),
                           static_cast<int>(w.phi[g].size()));
            continue;
        }

        ++report.triangles_checked;
        int src, exp, got;
        LabelMap f_shift = functor_arrow(F, gen, thick2);
        if (!maps_equal(w.phi[g], w.psi_thick[g], f_shift, &src, &exp, &got)) {
            ++report.triangles_failed;
            record_failure(report, "triangle psi_thick(phi) = F[I in I^2eps]", gen, thick2, src, exp, got);
        }
        ++report.triangles_checked;
        LabelMap g_shift = functor_arrow(G, gen, thick2);
        if (!maps_equal(w.psi[g], w.phi_thick[g], g_shift, &src, &exp, &got)) {
            ++report.triangles_failed;
            record_failure(report, "triangle phi_thick(psi) = G[I in I^2eps]", gen, thick2, src, exp, got);
        }
    }

    for (const auto& [inner_idx, outer_idx] : w.nested_pairs) {
        const Box& inner = w.generators[inner_idx];
        const Box& outer = w.generators[outer_idx];
        const Box inner_thick = thicken(inner, w.eps);
        const Box outer_thick = thicken(outer, w.eps);
        int src, exp, got;

        // phi naturality: G[I^eps in J^eps] . phi_I == phi_J . F[I in J]
        ++report.naturality_checked;
        {
            LabelMap f_arrow = functor_arrow(F, inner, outer);
            LabelMap g_arrow = functor_arrow(G, inner_thick, outer_thick);
            LabelMap expected;
            for (const auto& [s, mid] : f_arrow) expected.emplace(s, w.phi[outer_idx].at(mid));
            if (!maps_equal(w.phi[inner_idx], g_arrow, expected, &src, &exp, &got)) {
                ++report.naturality_failed;
                record_failure(report, "phi naturality", inner, outer, src, exp, got);
            }
        }
        // psi naturality: F[I^eps in J^eps] . psi_I == psi_J . G[I in J]
        ++report.naturality_checked;
        {
            LabelMap g_arrow = functor_arrow(G, inner, outer);
            LabelMap f_arrow = functor_arrow(F, inner_thick, outer_thick);
            LabelMap expected;
            for (const auto& [s, mid] : g_arrow) expected.emplace(s, w.psi[outer_idx].at(mid));
            if (!maps_equal(w.psi[inner_idx], f_arrow, expected, &src, &exp, &got)) {
                ++report.naturality_failed;
                record_failure(report, "psi naturality", inner, outer, src, exp, got);
            }
        }
    }
    return report;
}

InterleavingWitness swapped_witness(const InterleavingWitness& w) {
    InterleavingWitness out = w;
    std::swap(out.F, out.G);
    std::swap(out.phi, out.psi);
    std::swap(out.phi_thick, out.psi_thick);
    return out;
}

InterleavingWitness identity_witness(std::shared_ptr<const ComponentFunctor> functor,
                                     std::vector<Box> generators,
                                     std::vector<std::pair<int, int>> nested_pairs) {
    InterleavingWitness w;
    w.F = functor;
    w.G = functor;
    w.eps = 0.0;
    w.generators = std::move(generators);
    w.nested_pairs = std::move(nested_pairs);
    for (const Box& gen : w.generators) {
        LabelMap id;
        for (int label : w.F->eval(gen).labels) id.emplace(label, label);
        w.phi.push_back(id);
        w.psi.push_back(id);
        w.phi_thick.push_back(id);
        w.psi_thick.push_back(id);
    }
    return w;
}

InterleavingWitness witness_at_eps(const InterleavingWitness& w, double larger_eps) {
    if (larger_eps < w.eps) throw PreconditionError("witness_at_eps requires a larger eps");
    InterleavingWitness out;
    out.F = w.F;
    out.G = w.G;
    out.eps = larger_eps;
    out.sampled = w.sampled;
    out.generators = w.generators;
    out.nested_pairs = w.nested_pairs;
    const RdSpace& space = w.F->space();
    for (size_t g = 0; g < w.generators.size(); ++g) {
        const Box& gen = w.generators[g];
        const Box old_thick = thicken(gen, w.eps);
        const Box new_thick = thicken(gen, larger_eps);
        const Box new_thick2 = thicken(gen, 2.0 * larger_eps);
        // Main maps induced by composing with thickening arrows.
        LabelMap g_grow = functor_arrow(*w.G, old_thick, new_thick);
        LabelMap f_grow = functor_arrow(*w.F, old_thick, new_thick);
        LabelMap phi, psi;
        for (const auto& [s, mid] : w.phi[g]) phi.emplace(s, g_grow.at(mid));
        for (const auto& [s, mid] : w.psi[g]) psi.emplace(s, f_grow.at(mid));
        out.phi.push_back(std::move(phi));
        out.psi.push_back(std::move(psi));
        // Canonical maps at the new thickened generators.
        out.phi_thick.push_back(component_map(space, w.F->eval(new_thick), w.G->eval(new_thick2)));
        out.psi_thick.push_back(component_map(space, w.G->eval(new_thick), w.F->eval(new_thick2)));
    }
    return out;
}

bool corrupt_witness(InterleavingWitness& w, std::uint64_t seed) {
    if (w.generators.empty()) return false;
    const size_t n = w.generators.size();
    const size_t start = seed % n;
    for (size_t step = 0; step < n; ++step) {
        const size_t g = (start + step) % n;
        ComponentSet target = w.G->eval(thicken(w.generators[g], w.eps));
        if (target.labels.size() < 2) continue;
        for (auto& [src, dst] : w.phi[g]) {
            const int original = dst;
            for (int candidate : target.labels) {
                if (candidate == original) continue;
                dst = candidate;
                if (!verify_interleaving(w).pass) return true;
            }
            dst = original;
        }
    }
    return false;
}

double certified_upper_bound(const RdSpace& space, const Cover& cover) {
    const double res = resolution(cover);
    InterleavingWitness w = build_interleaving(space, cover, res);
    DiagramReport report = verify_interleaving(w);
    if (!report.pass) {
        throw CheckError("interleaving verification failed at eps = res: " + report.summary());
    }
    return res;
}

std::size_t ComponentSetFunctor::value_size(const Box& region) const { return f_->eval(region).size(); }

std::size_t ComponentSetFunctor::image_size(const Box& inner, const Box& outer) const {
    LabelMap arrow = functor_arrow(*f_, inner, outer);
    std::set<int> image;
    for (const auto& [src, dst] : arrow) {
        (void)src;
        image.insert(dst);
    }
    return image.size();
}

std::size_t PkSetFunctor::value_size(const Box& region) const { return pk_evaluate(cm_, region).size(); }

std::size_t PkSetFunctor::image_size(const Box& inner, const Box& outer) const {
    PkValue small = pk_evaluate(cm_, inner);
    PkValue large = pk_evaluate(cm_, outer);
    std::vector<int> up = pk_map(cm_, small, large);
    std::set<int> image(up.begin(), up.end());
    return image.size();
}

std::vector<double> default_candidate_grid(double max_eps, int steps) {
    std::vector<double> grid;
    for (int i = steps; i >= 1; --i) grid.push_back(max_eps * i / steps);
    return grid;
}

double cardinality_lower_bound(const SetFunctor& a, const SetFunctor& b, const std::vector<Box>& probes,
                               const std::vector<double>& candidate_grid) {
    std::vector<double> grid = candidate_grid;
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    for (size_t gi = 0; gi < grid.size(); ++gi) {
        const double eps = grid[gi];
        for (const Box& probe : probes) {
            std::size_t img = a.image_size(probe, thicken(probe, 2.0 * eps));
            std::size_t bound = b.value_size(thicken(probe, eps));
            if (img > bound) {
                if (gi == 0 && bound == 0) return std::numeric_limits<double>::infinity();
                return eps;
            }
        }
    }
    return 0.0;
}

}  // namespace reebmapper
