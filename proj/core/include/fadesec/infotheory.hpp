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

#pragma once

#include "fadesec/keygen.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fadesec
{
    // Empirical joint law of (X, Y, Z) = (Alice, Bob, Eve) bits. Cell index is 4x + 2y + z.
    class JointCounts
    {
    public:
        JointCounts() = default;

        void add(int x, int y, int z, std::uint64_t count = 1);
        std::uint64_t cell(int x, int y, int z) const;
        std::uint64_t total() const { return total_; }
        const std::array<std::uint64_t, 8> &cells() const { return cells_; }

        JointCounts &operator+=(const JointCounts &other);
        bool operator==(const JointCounts &) const = default;

    private:
        std::array<std::uint64_t, 8> cells_{};
        std::uint64_t total_ = 0;
    };

    // Counts (alice, bob, eve) bit triples. Throws if any record carries a dropped symbol or if
    // records is empty.
    JointCounts accumulate(std::span<const TrialRecord> records);

    // Variable subsets for entropy_of, combinable with |
    namespace margin
    {
        inline constexpr unsigned x = 4;
        inline constexpr unsigned y = 2;
        inline constexpr unsigned z = 1;
    }

    // Plug-in Shannon entropy of a marginal in bits, 0 log 0 = 0
    double entropy_of(const JointCounts &counts, unsigned variables);

    // I(X;Y|Z) via H(X,Z) + H(Y,Z) - H(Z) - H(X,Y,Z). The divergence form is evaluated as well and the
    // two must agree to 1e-10 (std::logic_error otherwise). Clamped at zero.
    double conditional_mi(const JointCounts &counts);

    // I(X;Y|Z) as D(p(x,y,z) || p(x,z) p(y,z) / p(z))
    double conditional_mi_divergence(const JointCounts &counts);

    double mutual_information(const JointCounts &counts);

    // Thrown when D(p||q) is undefined because q vanishes where p does not
    class AbsoluteContinuityError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    class Histogram
    {
    public:
        Histogram(std::vector<double> edges, std::vector<double> masses);

        // Bin masses of a distribution with the given CDF. Mass outside the edges is folded into
        // the first and last bins.
        template <class Cdf>
        static Histogram from_cdf(std::vector<double> edges, Cdf &&cdf)
        {
            std::vector<double> masses(edges.size() > 0 ? edges.size() - 1 : 0);
            for (std::size_t i = 0; i < masses.size(); ++i)
            {
                const double lo = (i == 0) ? 0.0 : cdf(edges[i]);
                const double hi = (i + 1 == masses.size()) ? 1.0 : cdf(edges[i + 1]);
                masses[i] = hi - lo;
            }
            return Histogram(std::move(edges), std::move(masses));
        }

        const std::vector<double> &edges() const { return edges_; }
        const std::vector<double> &masses() const { return masses_; }
        std::size_t bin_count() const { return masses_.size(); }
        double center(std::size_t bin) const { return 0.5 * (edges_[bin] + edges_[bin + 1]); }

    private:
        std::vector<double> edges_;
        std::vector<double> masses_;
    };

    std::vector<double> uniform_edges(std::size_t bin_count, double lo, double hi);

    // D(p||q) in bits. Throws std::invalid_argument on mismatched bins, AbsoluteContinuityError when
    // p has mass where q has none.
    double kl_divergence(const Histogram &p, const Histogram &q);

    enum class Smoothing
    {
        none,
        add_half, // add 1/2 to every bin count before normalizing
    };

    // Normalized histogram with bin_count uniform bins on [lo, hi]; out-of-range samples land in the edge bins.
    Histogram empirical_pdf(std::span<const double> samples, std::size_t bin_count, double lo, double hi,
                            Smoothing smoothing = Smoothing::none);
}
