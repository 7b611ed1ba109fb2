// SPDX-License-Identifier: MIT
#include "roughfunc/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace roughfunc {

// ---------------------------------------------------------------------------
// Word
// ---------------------------------------------------------------------------

Word::Word(std::vector<int> letters, int dim) : dim_(dim), letters_(std::move(letters)) {
    if (dim < 1) throw std::invalid_argument("Word: dimension must be >= 1");
    for (int l : letters_) {
        if (l < 0 || l >= dim)
            throw std::invalid_argument("Word: letter outside alphabet {1.." + std::to_string(dim) + "}");
    }
}

Word Word::from_one_based(std::initializer_list<int> letters, int dim) {
    std::vector<int> zero_based;
    zero_based.reserve(letters.size());
    for (int l : letters) zero_based.push_back(l - 1);
    return Word(std::move(zero_based), dim);
}

Word Word::from_index(std::size_t index, int order, int dim) {
    std::vector<int> letters(static_cast<std::size_t>(order));
    for (int i = order - 1; i >= 0; --i) {
        letters[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(dim));
        index /= static_cast<std::size_t>(dim);
    }
    return Word(std::move(letters), dim);
}

std::size_t Word::index() const {
    std::size_t idx = 0;
    for (int l : letters_) idx = idx * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(l);
    return idx;
}

Word Word::concat(const Word& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("Word::concat: dimension mismatch");
    std::vector<int> letters = letters_;
    letters.insert(letters.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(letters), dim_);
}

std::string Word::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(letters_[i] + 1);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// LevelTensor
// ---------------------------------------------------------------------------

std::size_t level_size(int dim, int order) {
    if (dim < 1) throw std::invalid_argument("level_size: dimension must be >= 1");
    if (order < 0) throw std::invalid_argument("level_size: order must be >= 0");
    std::size_t n = 1;
    for (int i = 0; i < order; ++i) {
        if (n > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(dim))
            throw std::overflow_error("level_size: d^k overflows");
        n *= static_cast<std::size_t>(dim);
    }
    return n;
}

LevelTensor::LevelTensor(int dim, int order)
    : dim_(dim), order_(order), coeffs_(level_size(dim, order), 0.0) {}

LevelTensor LevelTensor::scalar(double value, int dim) {
    LevelTensor t(dim, 0);
    t.coeffs_[0] = value;
    return t;
}

LevelTensor LevelTensor::basis(const Word& w) {
    LevelTensor t(w.dim(), static_cast<int>(w.size()));
    t.coeffs_[w.index()] = 1.0;
    return t;
}

LevelTensor LevelTensor::vector(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("LevelTensor::vector: empty vector");
    LevelTensor t(static_cast<int>(v.size()), 1);
    std::copy(v.begin(), v.end(), t.coeffs_.begin());
    return t;
}

LevelTensor LevelTensor::power(std::span<const double> v, int k) {
    if (v.empty()) throw std::invalid_argument("LevelTensor::power: empty vector");
    const int d = static_cast<int>(v.size());
    LevelTensor out = scalar(1.0, d);
    if (k == 0) return out;
    const LevelTensor base = vector(v);
    for (int i = 0; i < k; ++i) out = tensor_product(out, base);
    return out;
}

double LevelTensor::at(const Word& w) const {
    if (w.dim() != dim_ || static_cast<int>(w.size()) != order_)
        throw std::invalid_argument("LevelTensor::at: word shape mismatch");
    return coeffs_[w.index()];
}

double& LevelTensor::at(const Word& w) {
    if (w.dim() != dim_ || static_cast<int>(w.size()) != order_)
        throw std::invalid_argument("LevelTensor::at: word shape mismatch");
    return coeffs_[w.index()];
}

double LevelTensor::norm() const {
    double s = 0.0;
    for (double c : coeffs_) s += c * c;
    return std::sqrt(s);
}

void LevelTensor::require_same_shape(const LevelTensor& other, const char* op) const {
    if (other.dim_ != dim_ || other.order_ != order_)
        throw std::invalid_argument(std::string(op) + ": order/dimension mismatch");
}

LevelTensor& LevelTensor::operator+=(const LevelTensor& other) {
    require_same_shape(other, "LevelTensor::operator+=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

LevelTensor& LevelTensor::operator-=(const LevelTensor& other) {
    require_same_shape(other, "LevelTensor::operator-=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

LevelTensor& LevelTensor::operator*=(double factor) {
    for (double& c : coeffs_) c *= factor;
    return *this;
}

LevelTensor operator+(LevelTensor a, const LevelTensor& b) { return a += b; }
LevelTensor operator-(LevelTensor a, const LevelTensor& b) { return a -= b; }
LevelTensor operator*(double factor, LevelTensor a) { return a *= factor; }

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

LevelTensor tensor_product(const LevelTensor& a, const LevelTensor& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("tensor_product: dimension mismatch");
    LevelTensor out(a.dim(), a.order() + b.order());
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = a[i];
        double* dst = out.coeffs().data() + i * nb;
        for (std::size_t j = 0; j < nb; ++j) dst[j] = ai * b[j];
    }
    return out;
}

double inner_product(const LevelTensor& a, const LevelTensor& b) {
    if (a.dim() != b.dim() || a.order() != b.order())
        throw std::invalid_argument("inner_product: order/dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

LevelTensor contract(const LevelTensor& t, const LevelTensor& s) {
    if (t.dim() != s.dim()) throw std::invalid_argument("contract: dimension mismatch");
    if (s.order() >= t.order())
        throw std::invalid_argument("contract: contracted order must be smaller than tensor order");
    LevelTensor out(t.dim(), t.order() - s.order());
    const std::size_t tail = out.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double si = s[i];
        if (si == 0.0) continue;
        const double* src = t.coeffs().data() + i * tail;
        for (std::size_t h = 0; h < tail; ++h) out[h] += si * src[h];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shuffles and symmetrisation
// ---------------------------------------------------------------------------

namespace {

// Places the letters of w at the positions flagged in `from_w` (in order) and
// the letters of u in the remaining positions.
void enumerate_shuffles(const Word& w, const Word& u, std::vector<char>& from_w, std::size_t pos,
                        std::size_t used_w, FormalWordSum& out) {
    const std::size_t total = w.size() + u.size();
    if (pos == total) {
        std::vector<int> letters(total);
        std::size_t iw = 0, iu = 0;
        for (std::size_t p = 0; p < total; ++p) letters[p] = from_w[p] ? w[iw++] : u[iu++];
        out[Word(std::move(letters), w.dim())] += 1;
        return;
    }
    const std::size_t used_u = pos - used_w;
    if (used_w < w.size()) {
        from_w[pos] = 1;
        enumerate_shuffles(w, u, from_w, pos + 1, used_w + 1, out);
    }
    if (used_u < u.size()) {
        from_w[pos] = 0;
        enumerate_shuffles(w, u, from_w, pos + 1, used_w, out);
    }
}

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

FormalWordSum shuffle_words(const Word& w, const Word& u) {
    if (w.dim() != u.dim()) throw std::invalid_argument("shuffle_words: alphabet mismatch");
    FormalWordSum out;
    std::vector<char> from_w(w.size() + u.size(), 0);
    enumerate_shuffles(w, u, from_w, 0, 0, out);
    return out;
}

LevelTensor sym_project(const LevelTensor& t) {
    const int k = t.order();
    if (k <= 1) return t;
    const auto perms = all_permutations(k);
    const double inv = 1.0 / static_cast<double>(perms.size());
    const auto d = static_cast<std::size_t>(t.dim());

    LevelTensor out(t.dim(), k);
    std::vector<int> letters(static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
        std::size_t rest = idx;
        for (int i = k - 1; i >= 0; --i) {
            letters[static_cast<std::size_t>(i)] = static_cast<int>(rest % d);
            rest /= d;
        }
        double acc = 0.0;
        for (const auto& p : perms) {
            std::size_t j = 0;
            for (int i = 0; i < k; ++i)
                j = j * d + static_cast<std::size_t>(letters[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]);
            acc += t[j];
        }
        out[idx] = acc * inv;
    }
    return out;
}

double symmetry_defect(const LevelTensor& t) {
    const LevelTensor s = sym_project(t);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, std::abs(t[i] - s[i]));
    return worst;
}

// ---------------------------------------------------------------------------
// TruncatedSeries
// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(int dim, int depth) : dim_(dim) {
    if (depth < 0) throw std::invalid_argument("TruncatedSeries: depth must be >= 0");
    levels_.reserve(static_cast<std::size_t>(depth) + 1);
    for (int k = 0; k <= depth; ++k) levels_.emplace_back(dim, k);
}

TruncatedSeries TruncatedSeries::unit(int dim, int depth) {
    TruncatedSeries s(dim, depth);
    s.levels_[0][0] = 1.0;
    return s;
}

double TruncatedSeries::coefficient(const Word& w) const {
    if (w.dim() != dim_) throw std::invalid_argument("TruncatedSeries::coefficient: alphabet mismatch");
    if (static_cast<int>(w.size()) > depth())
        throw std::invalid_argument("TruncatedSeries::coefficient: word longer than depth");
    return levels_[w.size()][w.index()];
}

double TruncatedSeries::pair(const FormalWordSum& sum) const {
    double acc = 0.0;
    for (const auto& [w, mult] : sum) acc += static_cast<double>(mult) * coefficient(w);
    return acc;
}

TruncatedSeries truncated_product(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.dim() != b.dim() || a.depth() != b.depth())
        throw std::invalid_argument("truncated_product: dimension/depth mismatch");
    TruncatedSeries out(a.dim(), a.depth());
    for (int k = 0; k <= a.depth(); ++k) {
        LevelTensor& dst = out.level(k);
        for (int j = 0; j <= k; ++j) {
            const LevelTensor& left = a.level(j);
            const LevelTensor& right = b.level(k - j);
            const std::size_t nr = right.size();
            for (std::size_t i = 0; i < left.size(); ++i) {
                const double li = left[i];
                if (li == 0.0) continue;
                double* row = dst.coeffs().data() + i * nr;
                for (std::size_t r = 0; r < nr; ++r) row[r] += li * right[r];
            }
        }
    }
    return out;
}

double series_distance(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.dim() != b.dim() || a.depth() != b.depth())
        throw std::invalid_argument("series_distance: dimension/depth mismatch");
    double worst = 0.0;
    for (int k = 0; k <= a.depth(); ++k) worst = std::max(worst, (a.level(k) - b.level(k)).norm());
    return worst;
}

}  // namespace roughfunc
