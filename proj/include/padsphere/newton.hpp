#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padsphere/matrix.hpp"

namespace padsphere {

struct PolygonSegment {
    Rat slope;             // strictly increasing left to right
    long long length;      // horizontal extent
};

// Lower convex hull of the points (i, v(c_i)) of a monic polynomial with
// nonzero constant term. Slope convention (fixed once, tested against
// diagonal matrices): a segment of slope s and length L accounts for L
// roots of valuation -s.
class NewtonPolygon {
public:
    static NewtonPolygon from_coefficients(const Prime& p, const std::vector<Rat>& coeffs) {
        if (coeffs.size() < 2) throw std::invalid_argument("polynomial must have degree >= 1");
        if (coeffs.back() != 1) throw std::invalid_argument("polynomial must be monic");
        if (coeffs.front() == 0) throw std::domain_error("zero constant term (singular input)");

        std::vector<std::pair<long long, long long>> pts;  // (i, v(c_i)), finite only
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const Valuation v = valuation(p, coeffs[i]);
            if (!v.is_infinite()) pts.emplace_back(static_cast<long long>(i), v.value());
        }

        // monotone-chain lower hull, exact integer cross products;
        // collinear points merge into one segment
        std::vector<std::pair<long long, long long>> hull;
        for (const auto& pt : pts) {
            while (hull.size() >= 2) {
                const auto& a = hull[hull.size() - 2];
                const auto& b = hull[hull.size() - 1];
                const Int lhs = Int(b.second - a.second) * Int(pt.first - b.first);
                const Int rhs = Int(pt.second - b.second) * Int(b.first - a.first);
                if (lhs >= rhs)
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(pt);
        }

        NewtonPolygon poly;
        poly.points_ = std::move(pts);
        for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
            const long long run = hull[k + 1].first - hull[k].first;
            poly.segments_.push_back(
                {Rat(Int(hull[k + 1].second - hull[k].second), Int(run)), run});
        }
        return poly;
    }

    const std::vector<std::pair<long long, long long>>& points() const { return points_; }
    const std::vector<PolygonSegment>& segments() const { return segments_; }

    long long total_length() const {
        long long t = 0;
        for (const auto& s : segments_) t += s.length;
        return t;
    }

private:
    NewtonPolygon() = default;
    std::vector<std::pair<long long, long long>> points_;
    std::vector<PolygonSegment> segments_;
};

// Multiset of eigenvalue valuations (negated polygon slopes), ascending.
struct SlopeData {
    std::vector<std::pair<Rat, long long>> items;  // (root valuation, multiplicity)

    static SlopeData from_polygon(const NewtonPolygon& poly) {
        SlopeData data;
        for (const auto& seg : poly.segments()) data.items.push_back({-seg.slope, seg.length});
        std::sort(data.items.begin(), data.items.end());
        return data;
    }

    long long total_multiplicity() const {
        long long t = 0;
        for (const auto& [v, m] : items) t += m;
        return t;
    }

    bool all_zero() const {
        return items.size() == 1 && items[0].first == 0;
    }

    bool single_valuation() const { return items.size() == 1; }

    // Sum of valuation * multiplicity; equals v(det T) for char polynomials.
    Rat weighted_sum() const {
        Rat s = 0;
        for (const auto& [v, m] : items) s += v * Rat(m);
        return s;
    }

    friend bool operator==(const SlopeData& a, const SlopeData& b) { return a.items == b.items; }
};

inline NewtonPolygon newton_polygon(const Prime& p, const std::vector<Rat>& coeffs) {
    return NewtonPolygon::from_coefficients(p, coeffs);
}

inline SlopeData eigenvalue_valuations(const Mat& t) {
    const auto coeffs = t.char_poly();
    if (coeffs.front() == 0) throw std::domain_error("singular matrix");
    return SlopeData::from_polygon(newton_polygon(t.prime(), coeffs));
}

}  // namespace padsphere
