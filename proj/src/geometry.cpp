#include "sepred/geometry.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <set>

#include "sepred/bounds.hpp"
#include "sepred/errors.hpp"
#include "sepred/parallel.hpp"
#include "sepred/rng.hpp"
#include "sepred/separation.hpp"

namespace sepred {

namespace {

using Mask = std::array<std::uint64_t, 4>;  // up to 256 points (h <= 4)

Mask mask_of(const Subset& s) {
    Mask m{};
    for (auto p : s) m[p / 64] |= std::uint64_t{1} << (p % 64);
    return m;
}

Subset subset_of(const Mask& m) {
    Subset s;
    for (std::uint32_t w = 0; w < m.size(); ++w)
        for (std::uint64_t bits = m[w]; bits; bits &= bits - 1)
            s.push_back(w * 64 + static_cast<std::uint32_t>(std::countr_zero(bits)));
    return s;
}

bool contains(const Mask& outer, const Mask& inner) {
    for (std::size_t w = 0; w < outer.size(); ++w)
        if ((inner[w] & ~outer[w]) != 0) return false;
    return true;
}

Mask unite(const Mask& a, const Mask& b) {
    Mask m;
    for (std::size_t w = 0; w < m.size(); ++w) m[w] = a[w] | b[w];
    return m;
}

std::size_t popcount(const Mask& m) {
    std::size_t c = 0;
    for (auto w : m) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::uint64_t pow2(std::uint32_t e) { return std::uint64_t{1} << e; }

}  // namespace

std::vector<std::uint32_t> AffinePlane::class_lines(std::uint32_t cls) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < lines.size(); ++i)
        if (line_class[i] == cls) out.push_back(i);
    return out;
}

AffinePlane build_plane(std::uint32_t h) {
    if (h < 1 || h > 4) throw InvalidArgument("affine plane exponent h must be in [1, 4]");
    AffinePlane plane;
    plane.h = h;
    plane.q = 1u << h;
    plane.field = Field::make(2, h);
    const Field& f = *plane.field;
    const std::uint32_t q = plane.q;
    for (Elem m = 0; m < q; ++m)
        for (Elem b = 0; b < q; ++b) {
            Subset line;
            for (Elem x = 0; x < q; ++x) line.push_back(plane.point(x, f.add(f.mul(m, x), b)));
            std::sort(line.begin(), line.end());
            plane.lines.push_back(std::move(line));
            plane.line_class.push_back(m);
        }
    for (Elem c = 0; c < q; ++c) {
        Subset line;
        for (Elem y = 0; y < q; ++y) line.push_back(plane.point(c, y));
        plane.lines.push_back(std::move(line));
        plane.line_class.push_back(q);
    }
    return plane;
}

bool check_plane_axioms(const AffinePlane& plane) {
    const std::uint32_t n = plane.points();
    if (plane.lines.size() != std::size_t{plane.q} * (plane.q + 1)) return false;
    std::vector<std::uint32_t> pair_count(std::size_t{n} * n, 0);
    for (const auto& line : plane.lines) {
        if (line.size() != plane.q) return false;
        for (std::size_t i = 0; i < line.size(); ++i)
            for (std::size_t j = i + 1; j < line.size(); ++j) ++pair_count[std::size_t{line[i]} * n + line[j]];
    }
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            if (pair_count[std::size_t{a} * n + b] != 1) return false;
    for (std::uint32_t cls = 0; cls < plane.classes(); ++cls) {
        std::vector<int> seen(n, 0);
        const auto ids = plane.class_lines(cls);
        if (ids.size() != plane.q) return false;
        for (auto id : ids)
            for (auto p : plane.lines[id]) ++seen[p];
        if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) return false;
    }
    return true;
}

GFMatrix incidence_matrix(const AffinePlane& plane) {
    GFMatrix m(Field::make(2, 1), plane.lines.size(), plane.points());
    for (std::size_t r = 0; r < plane.lines.size(); ++r)
        for (auto p : plane.lines[r]) m.set(r, p, 1);
    return m;
}

LinearCode incidence_code(const AffinePlane& plane) {
    const GFMatrix h = incidence_matrix(plane);
    std::size_t expected = 1;
    for (std::uint32_t i = 0; i < plane.h; ++i) expected *= 3;
    const std::size_t r = rank(h);
    if (r != expected)
        throw CertificateFailure("incidence rank " + std::to_string(r) + " differs from 3^h = " + std::to_string(expected));
    const std::string name = "ag2-" + std::to_string(plane.q);
    if (plane.h <= 2) return LinearCode::from_parity_check(h, name);
    return LinearCode::from_parity_check(h, name, plane.q + 2, plane.q);
}

std::uint64_t conic_count_closed_form(std::uint32_t h) { return pow2(5 * h) + pow2(4 * h) + pow2(3 * h); }

std::uint64_t block_total_closed_form(std::uint32_t h) {
    return pow2(5 * h) + 3 * pow2(4 * h - 1) + 9 * pow2(3 * h - 1) - 3 * pow2(h);
}

std::vector<Subset> enumerate_conics(const AffinePlane& plane, unsigned threads) {
    const Field& f = *plane.field;
    const std::uint32_t q = plane.q;
    const std::uint32_t n = plane.points();
    // Monomials x^2, xy, y^2, x, y per point.
    std::vector<std::array<Elem, 5>> mono(n);
    for (Elem x = 0; x < q; ++x)
        for (Elem y = 0; y < q; ++y) mono[plane.point(x, y)] = {f.mul(x, x), f.mul(x, y), f.mul(y, y), x, y};

    std::vector<Mask> line_masks;
    for (const auto& l : plane.lines) line_masks.push_back(mask_of(l));

    auto degenerate = [&](const Mask& z) {
        if (popcount(z) <= 1) return true;
        std::vector<std::size_t> inside;
        for (std::size_t i = 0; i < line_masks.size(); ++i) {
            if (line_masks[i] == z) return true;
            if (contains(z, line_masks[i])) inside.push_back(i);
        }
        for (std::size_t i = 0; i < inside.size(); ++i)
            for (std::size_t j = i + 1; j < inside.size(); ++j)
                if (unite(line_masks[inside[i]], line_masks[inside[j]]) == z) return true;
        return false;
    };

    // Quadratic parts (a,b,c) normalized so the first nonzero entry is 1.
    std::vector<std::array<Elem, 3>> quads;
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            for (Elem c = 0; c < q; ++c) {
                const Elem lead = a ? a : (b ? b : c);
                if (lead == 1) quads.push_back({a, b, c});
            }

    const unsigned workers = threads ? threads : resolve_threads();
    std::vector<std::set<Mask>> found(std::max(1u, workers));
    parallel_chunks(quads.size(), workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        std::vector<Elem> quad_val(n), lin_val(n);
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto [a, b, c] = quads[i];
            for (std::uint32_t p = 0; p < n; ++p)
                quad_val[p] = f.add(f.add(f.mul(a, mono[p][0]), f.mul(b, mono[p][1])), f.mul(c, mono[p][2]));
            for (Elem d = 0; d < q; ++d)
                for (Elem e = 0; e < q; ++e) {
                    for (std::uint32_t p = 0; p < n; ++p)
                        lin_val[p] = f.add(quad_val[p], f.add(f.mul(d, mono[p][3]), f.mul(e, mono[p][4])));
                    for (Elem cst = 0; cst < q; ++cst) {
                        Mask z{};
                        for (std::uint32_t p = 0; p < n; ++p)
                            if (lin_val[p] == cst) z[p / 64] |= std::uint64_t{1} << (p % 64);
                        found[w].insert(z);
                    }
                }
        }
    });
    std::set<Mask> all;
    for (auto& s : found) all.merge(s);
    std::vector<Subset> conics;
    for (const auto& z : all)
        if (!degenerate(z)) conics.push_back(subset_of(z));
    std::sort(conics.begin(), conics.end());
    return conics;
}

GeneralizedCovering GeneralizedCoveringAG::covering(std::uint32_t n) const {
    GeneralizedCovering g{n, 5, 1, {}};
    g.blocks.reserve(size());
    for (const auto* family : {&l0, &l1, &l2}) g.blocks.insert(g.blocks.end(), family->begin(), family->end());
    return g;
}

GeneralizedCoveringAG build_generalized_covering(const AffinePlane& plane, unsigned threads) {
    if (plane.h < 3) throw InvalidArgument("the six-transversal family needs h >= 3");
    GeneralizedCoveringAG g;
    g.l0 = enumerate_conics(plane, threads);
    for (std::uint32_t c1 = 0; c1 < plane.classes(); ++c1)
        for (std::uint32_t c2 = c1 + 1; c2 < plane.classes(); ++c2)
            for (auto a : plane.class_lines(c1))
                for (auto b : plane.class_lines(c2)) {
                    Subset u;
                    std::set_union(plane.lines[a].begin(), plane.lines[a].end(), plane.lines[b].begin(),
                                   plane.lines[b].end(), std::back_inserter(u));
                    g.l1.push_back(std::move(u));
                }
    for (std::uint32_t cls = 0; cls < plane.classes(); ++cls) {
        const auto ids = plane.class_lines(cls);
        const auto transversals = plane.class_lines(cls == 0 ? 1 : 0);
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                Subset pair;
                std::set_union(plane.lines[ids[i]].begin(), plane.lines[ids[i]].end(), plane.lines[ids[j]].begin(),
                               plane.lines[ids[j]].end(), std::back_inserter(pair));
                for (std::size_t t = 0; t < 6; ++t) {
                    const auto& cut = plane.lines[transversals[t]];
                    Subset block;
                    std::set_difference(pair.begin(), pair.end(), cut.begin(), cut.end(), std::back_inserter(block));
                    g.l2.push_back(std::move(block));
                }
            }
    }
    return g;
}

bool GeometryCertificate::counts_ok() const {
    return std::all_of(counts.begin(), counts.end(), [](const CountCheck& c) { return c.ok(); });
}

bool GeometryCertificate::passed() const {
    std::size_t expected_rank = 1;
    for (std::uint32_t i = 0; i < h; ++i) expected_rank *= 3;
    return incidence_rank == expected_rank && counts_ok() && coverage_ok && columns_independent && comparison_holds &&
           spot_failures == 0;
}

std::vector<std::string> GeometryCertificate::lines() const {
    std::vector<std::string> out;
    const auto yes = [](bool b) { return std::string(b ? "ok" : "FAILED"); };
    out.push_back("AG(2," + std::to_string(1u << h) + ") incidence code " + to_string(params));
    out.push_back("incidence rank: " + std::to_string(incidence_rank));
    for (const auto& c : counts)
        out.push_back(c.name + ": " + std::to_string(c.computed) + " (closed form " + std::to_string(c.expected) + ") " +
                      (c.ok() ? "ok" : "MISMATCH"));
    std::string sizes = "conic point-set sizes:";
    for (const auto& [size, count] : conic_sizes) sizes += " " + std::to_string(size) + "x" + std::to_string(count);
    out.push_back(sizes);
    std::string cover = "5-subset coverage: " + yes(coverage_ok);
    if (uncovered) {
        cover += " first uncovered {";
        for (std::size_t i = 0; i < uncovered->size(); ++i) cover += (i ? "," : "") + std::to_string((*uncovered)[i]);
        cover += "}";
    }
    out.push_back(cover);
    out.push_back("block column independence: " + yes(columns_independent) +
                  (dependent_block ? " first dependent block " + std::to_string(*dependent_block) : ""));
    out.push_back("stacked rows: " + std::to_string(stacked_rows));
    out.push_back("stated bound: " + stated_bound.get_str());
    out.push_back("comparison floor: " + comparison_floor.get_str() + " (bound below floor: " + yes(comparison_holds) +
                  ")");
    out.push_back("rank spot checks: " + std::to_string(spot_checks - spot_failures) + "/" +
                  std::to_string(spot_checks) + " full rank");
    for (const auto& a : assumptions) out.push_back("assumption: " + a);
    out.push_back(std::string("certificate: ") + (passed() ? "PASSED" : "FAILED"));
    return out;
}

FiveSeparatingResult build_5separating(const AffinePlane& plane, const GeometryOptions& options) {
    if (plane.h < 3) throw InvalidArgument("the 5-separating construction needs h >= 3");
    const unsigned workers = options.threads ? options.threads : resolve_threads();
    const std::uint32_t q = plane.q;
    const std::uint32_t n = plane.points();
    FiveSeparatingResult out;
    GeometryCertificate& cert = out.certificate;
    cert.h = plane.h;

    const LinearCode code = incidence_code(plane);
    cert.incidence_rank = code.params().redundancy();
    cert.params = code.params();
    cert.assumptions.push_back("d = 2^h + 2 and d-dual = 2^h are taken as given (no enumeration at this size)");

    out.blocks = build_generalized_covering(plane, workers);
    const auto& g = out.blocks;
    for (const auto& c : g.l0) ++cert.conic_sizes[c.size()];
    cert.counts.push_back({"irreducible conics |L0|", g.l0.size(), conic_count_closed_form(plane.h)});
    cert.counts.push_back({"nonparallel line pairs |L1|", g.l1.size(), std::uint64_t{q} * q * (q + 1) * q / 2});
    cert.counts.push_back({"parallel pairs minus a transversal |L2|", g.l2.size(),
                           std::uint64_t{6} * (q + 1) * (q * (q - 1) / 2)});
    cert.counts.push_back({"blocks", g.size(), block_total_closed_form(plane.h)});

    const auto coverage = verify_covering(g.covering(n), workers);
    cert.coverage_ok = coverage.covered;
    cert.uncovered = coverage.uncovered;

    // Per-block I_B / M_B; a dependent block is recorded instead of stacked.
    const GeneralizedCovering all = g.covering(n);
    const std::size_t blocks = all.blocks.size();
    std::vector<std::optional<IsMs>> parts(blocks);
    parallel_chunks(blocks, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        for (std::uint64_t i = begin; i < end; ++i) {
            try {
                parts[i] = extract_is_ms(code, all.blocks[i]);
            } catch (const InvalidArgument&) {
            }
        }
    });
    cert.columns_independent = true;
    for (std::size_t i = 0; i < blocks; ++i)
        if (!parts[i]) {
            cert.columns_independent = false;
            cert.dependent_block = i;
            break;
        }

    GFMatrix stacked(code.field(), 0, n);
    for (std::size_t i = 0; i < blocks; ++i) {
        if (!parts[i]) continue;
        stacked.append_rows(parts[i]->i_b);
        stacked.append_rows(parts[i]->m_b);
        parts[i].reset();
    }
    cert.stacked_rows = stacked.rows();
    const mpz_class three_h = power_big(3, plane.h);
    cert.stated_bound = three_h * mpz_class(std::to_string(block_total_closed_form(plane.h)));
    cert.counts.push_back({"stacked rows", cert.stacked_rows, cert.stated_bound.get_ui()});
    cert.comparison_floor = geometry_comparison_floor(code.params(), 5);
    cert.comparison_holds = mpq_class(cert.stated_bound) < cert.comparison_floor;

    // Rank spot checks: uniform 5-subsets, then 5-subsets inside random blocks.
    const SeparationChecker checker(stacked);
    const std::size_t required = code.params().redundancy() - 5;
    CounterRng rng(options.seed);
    auto check = [&](Subset s) {
        std::sort(s.begin(), s.end());
        ++cert.spot_checks;
        if (checker.rank_hs(s, required) != required) ++cert.spot_failures;
    };
    for (std::uint64_t i = 0; i < options.spot_checks; ++i) {
        Subset s;
        while (s.size() < 5) {
            const auto p = static_cast<std::uint32_t>(rng.below(n));
            if (std::find(s.begin(), s.end(), p) == s.end()) s.push_back(p);
        }
        check(std::move(s));
    }
    for (std::uint64_t i = 0; i < options.spot_checks; ++i) {
        const auto& block = all.blocks[rng.below(blocks)];
        Subset pos;
        while (pos.size() < 5) {
            const auto p = static_cast<std::uint32_t>(rng.below(block.size()));
            if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
        }
        Subset s;
        for (auto p : pos) s.push_back(block[p]);
        check(std::move(s));
    }
    if (options.keep_matrix) out.matrix = std::move(stacked);
    return out;
}

}  // namespace sepred
