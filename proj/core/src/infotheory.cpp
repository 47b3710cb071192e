// SPDX-License-Identifier: Apache-2.0
//
// fadesec - Monte Carlo key-rate analysis for fading-channel secret keys
// Copyright (C) 2026 The fadesec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fadesec/infotheory.hpp"

#include <cmath>
#include <numeric>

namespace
{
    std::size_t cell_index(int x, int y, int z)
    {
        if ((x | y | z) & ~1)
            throw std::invalid_argument("JointCounts: bit values must be 0 or 1");
        return std::size_t(4 * x + 2 * y + z);
    }

    void require_nonempty(const fadesec::JointCounts &counts)
    {
        if (counts.total() == 0)
            throw std::invalid_argument("JointCounts: estimation requires at least one observation");
    }

    // Probability of every outcome of the selected variables, indexed by the masked cell index
    std::array<double, 8> marginal(const fadesec::JointCounts &counts, unsigned variables)
    {
        std::array<double, 8> p{};
        const double total = double(counts.total());
        for (std::size_t i = 0; i < 8; ++i)
            p[i & variables] += double(counts.cells()[i]) / total;
        return p;
    }
}

void fadesec::JointCounts::add(int x, int y, int z, std::uint64_t count)
{
    cells_[cell_index(x, y, z)] += count;
    total_ += count;
}

std::uint64_t fadesec::JointCounts::cell(int x, int y, int z) const
{
    return cells_[cell_index(x, y, z)];
}

fadesec::JointCounts &fadesec::JointCounts::operator+=(const JointCounts &other)
{
    for (std::size_t i = 0; i < 8; ++i)
        cells_[i] += other.cells_[i];
    total_ += other.total_;
    return *this;
}

fadesec::JointCounts fadesec::accumulate(std::span<const TrialRecord> records)
{
    if (records.empty())
        throw std::invalid_argument("accumulate: no trial records");
    JointCounts counts;
    for (const auto &r : records)
    {
        if (!r.kept())
            throw std::invalid_argument("accumulate: record contains a dropped symbol");
        counts.add(int(r.alice()), int(r.bob()), int(r.eve()));
    }
    return counts;
}

double fadesec::entropy_of(const JointCounts &counts, unsigned variables)
{
    if ((variables & 7u) == 0 || (variables & ~7u) != 0)
        throw std::invalid_argument("entropy_of: margin must select at least one of X, Y, Z");
    require_nonempty(counts);

    const auto p = marginal(counts, variables);
    double h = 0.0;
    for (double v : p)
        if (v > 0.0)
            h -= v * std::log2(v);
    return h;
}

double fadesec::conditional_mi_divergence(const JointCounts &counts)
{
    require_nonempty(counts);
    using namespace margin;
    const auto pxz = marginal(counts, x | z);
    const auto pyz = marginal(counts, y | z);
    const auto pz = marginal(counts, z);
    const double total = double(counts.total());

    double d = 0.0;
    for (unsigned i = 0; i < 8; ++i)
    {
        const double p = double(counts.cells()[i]) / total;
        if (p == 0.0)
            continue;
        const double q = pxz[i & (x | z)] * pyz[i & (y | z)] / pz[i & z];
        d += p * std::log2(p / q);
    }
    return d;
}

double fadesec::conditional_mi(const JointCounts &counts)
{
    using namespace margin;
    const double identity = entropy_of(counts, x | z) + entropy_of(counts, y | z) - entropy_of(counts, z) -
                            entropy_of(counts, x | y | z);
    const double divergence = conditional_mi_divergence(counts);
    if (std::abs(identity - divergence) > 1e-10)
        throw std::logic_error("conditional_mi: entropy identity and divergence form disagree");
    return std::max(0.0, identity);
}

double fadesec::mutual_information(const JointCounts &counts)
{
    using namespace margin;
    const double mi = entropy_of(counts, x) + entropy_of(counts, y) - entropy_of(counts, x | y);
    return std::max(0.0, mi);
}

fadesec::Histogram::Histogram(std::vector<double> edges, std::vector<double> masses)
    : edges_(std::move(edges)), masses_(std::move(masses))
{
    if (edges_.size() < 2 || masses_.size() + 1 != edges_.size())
        throw std::invalid_argument("Histogram: need bin_count + 1 edges for bin_count >= 1 masses");
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (!(edges_[i] > edges_[i - 1]))
            throw std::invalid_argument("Histogram: edges must be strictly increasing");
    double sum = 0.0;
    for (double m : masses_)
    {
        if (!(m >= 0.0))
            throw std::invalid_argument("Histogram: masses must be non-negative");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("Histogram: masses must sum to 1");
}

std::vector<double> fadesec::uniform_edges(std::size_t bin_count, double lo, double hi)
{
    if (bin_count < 1 || !(lo < hi))
        throw std::invalid_argument("uniform_edges: need bin_count >= 1 and lo < hi");
    std::vector<double> edges(bin_count + 1);
    for (std::size_t i = 0; i <= bin_count; ++i)
        edges[i] = lo + (hi - lo) * double(i) / double(bin_count);
    return edges;
}

double fadesec::kl_divergence(const Histogram &p, const Histogram &q)
{
    if (p.edges() != q.edges())
        throw std::invalid_argument("kl_divergence: histograms must share bin edges");

    double d = 0.0;
    for (std::size_t i = 0; i < p.bin_count(); ++i)
    {
        const double pi = p.masses()[i], qi = q.masses()[i];
        if (pi == 0.0)
            continue;
        if (qi == 0.0)
            throw AbsoluteContinuityError("kl_divergence: q has zero mass in bin " + std::to_string(i) +
                                          " where p is positive");
        d += pi * std::log2(pi / qi);
    }
    return std::max(0.0, d);
}

fadesec::Histogram fadesec::empirical_pdf(std::span<const double> samples, std::size_t bin_count, double lo, double hi,
                                          Smoothing smoothing)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_pdf: no samples");
    if (bin_count < 2 || !(lo < hi))
        throw std::invalid_argument("empirical_pdf: need bin_count >= 2 and lo < hi");

    std::vector<double> counts(bin_count, smoothing == Smoothing::add_half ? 0.5 : 0.0);
    const double scale = double(bin_count) / (hi - lo);
    for (double s : samples)
    {
        if (std::isnan(s))
            throw std::invalid_argument("empirical_pdf: NaN sample");
        const double pos = (s - lo) * scale;
        std::size_t bin = 0;
        if (pos >= double(bin_count))
            bin = bin_count - 1;
        else if (pos > 0.0)
            bin = std::size_t(pos);
        counts[bin] += 1.0;
    }

    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    for (auto &c : counts)
        c /= total;
    return Histogram(uniform_edges(bin_count, lo, hi), std::move(counts));
}
