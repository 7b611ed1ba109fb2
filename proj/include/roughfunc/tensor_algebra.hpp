// SPDX-License-Identifier: MIT
/**
 * Dense truncated tensor algebra over R^d.
 *
 * Level-k tensors are stored densely (d^k coefficients) with row-major word
 * indexing: the word (w_1, ..., w_k) with 0-based letters maps to
 * sum_i w_i d^(k-i). Letters are 0-based in memory and 1-based in all text
 * I/O (Word::to_string, Word::from_one_based).
 */
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace roughfunc {

/// Word in the alphabet {0, ..., dim-1}; the empty word is allowed.
class Word {
public:
    Word() = default;
    Word(std::vector<int> letters, int dim);

    /// Build from 1-based letters, e.g. from_one_based({1, 2}, 2) is e_1 (x) e_2.
    static Word from_one_based(std::initializer_list<int> letters, int dim);
    static Word from_index(std::size_t index, int order, int dim);

    int dim() const { return dim_; }
    std::size_t size() const { return letters_.size(); }
    int operator[](std::size_t i) const { return letters_[i]; }
    std::span<const int> letters() const { return letters_; }

    /// Row-major position of this word inside a level tensor of order size().
    std::size_t index() const;

    /// Concatenation w u.
    Word concat(const Word& other) const;

    /// "(1,2,2)" with 1-based letters; "()" for the empty word.
    std::string to_string() const;

    auto operator<=>(const Word&) const = default;
    bool operator==(const Word&) const = default;

private:
    int dim_ = 1;
    std::vector<int> letters_;
};

/// Formal sum of words with positive integer multiplicities.
using FormalWordSum = std::map<Word, std::int64_t>;

/// Element of T_k(R^d): order k, d^k coefficients.
class LevelTensor {
public:
    LevelTensor() : LevelTensor(1, 0) {}
    LevelTensor(int dim, int order);

    static LevelTensor scalar(double value, int dim);
    static LevelTensor basis(const Word& w);
    static LevelTensor vector(std::span<const double> v);
    /// v (x) v (x) ... (x) v, k factors; order 0 gives the scalar 1.
    static LevelTensor power(std::span<const double> v, int k);

    int dim() const { return dim_; }
    int order() const { return order_; }
    std::size_t size() const { return coeffs_.size(); }

    double operator[](std::size_t i) const { return coeffs_[i]; }
    double& operator[](std::size_t i) { return coeffs_[i]; }
    double at(const Word& w) const;
    double& at(const Word& w);

    std::span<const double> coeffs() const { return coeffs_; }
    std::span<double> coeffs() { return coeffs_; }

    /// Euclidean norm of the coefficient vector.
    double norm() const;

    LevelTensor& operator+=(const LevelTensor& other);
    LevelTensor& operator-=(const LevelTensor& other);
    LevelTensor& operator*=(double factor);

private:
    void require_same_shape(const LevelTensor& other, const char* op) const;

    int dim_;
    int order_;
    std::vector<double> coeffs_;
};

LevelTensor operator+(LevelTensor a, const LevelTensor& b);
LevelTensor operator-(LevelTensor a, const LevelTensor& b);
LevelTensor operator*(double factor, LevelTensor a);

/// Coefficient count d^k, throwing on overflow.
std::size_t level_size(int dim, int order);

LevelTensor tensor_product(const LevelTensor& a, const LevelTensor& b);
double inner_product(const LevelTensor& a, const LevelTensor& b);

/// Partial contraction <t, s> of order k - m, defined by <<t,s>, h> = <t, s (x) h>.
/// Requires s.order() < t.order().
LevelTensor contract(const LevelTensor& t, const LevelTensor& s);

/// All interleavings of w and u that preserve the internal letter order of each.
FormalWordSum shuffle_words(const Word& w, const Word& u);

/// Symmetric part: average over all k! permutations of the index positions.
LevelTensor sym_project(const LevelTensor& t);

/// Largest coefficient deviation between t and sym_project(t).
double symmetry_defect(const LevelTensor& t);

/// Levels 0..depth of a tensor series over R^dim.
class TruncatedSeries {
public:
    TruncatedSeries(int dim, int depth);

    /// Level 0 equal to 1, all other levels zero.
    static TruncatedSeries unit(int dim, int depth);

    int dim() const { return dim_; }
    int depth() const { return static_cast<int>(levels_.size()) - 1; }

    const LevelTensor& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
    LevelTensor& level(int k) { return levels_.at(static_cast<std::size_t>(k)); }

    /// <S, e_w> for a word of length <= depth.
    double coefficient(const Word& w) const;

    /// <S, sum_w c_w e_w>.
    double pair(const FormalWordSum& sum) const;

private:
    int dim_;
    std::vector<LevelTensor> levels_;
};

/// Concatenation product: level k of the result is sum_j a_j (x) b_{k-j}.
TruncatedSeries truncated_product(const TruncatedSeries& a, const TruncatedSeries& b);

/// Largest per-level coefficient norm of a - b.
double series_distance(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace roughfunc
