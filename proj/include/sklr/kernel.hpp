#ifndef SKLR_KERNEL_HPP
#define SKLR_KERNEL_HPP

#include <cstddef>
#include <list>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sklr/dataset.hpp"

namespace sklr {

/// Kernel function choice.
struct KernelSpec {
    enum class Kind { gaussian, linear, polynomial };

    Kind kind = Kind::gaussian;
    double sigma = 1.0;     // gaussian width, > 0
    int degree = 2;         // polynomial degree, >= 1
    double coef = 0.0;      // polynomial additive constant

    static KernelSpec gaussian(double sigma);
    static KernelSpec linear();
    static KernelSpec polynomial(int degree, double coef);

    void validate() const;
    std::string name() const;
};

double kernel_eval(const KernelSpec& spec, std::span<const double> a,
                   std::span<const double> b);

/// Memoized access to rows of the kernel matrix of a fixed dataset.
///
/// For N <= full_threshold the whole N x N matrix is precomputed and the
/// cache is read-only afterwards (shareable across threads). Above the
/// threshold rows are computed on demand and kept in an LRU of
/// max(2p, 512) rows; that mode is single-consumer. The diagonal is always
/// precomputed. Row evaluation is deterministic (index-order summation), so
/// row(i)[j] == row(j)[i] bit-for-bit in either mode.
class KernelCache {
public:
    static constexpr std::size_t kDefaultFullThreshold = 8000;

    KernelCache(KernelSpec spec, const Dataset& d,
                std::size_t full_threshold = kDefaultFullThreshold);

    std::span<const double> row(std::size_t i);
    double diag(std::size_t i) const { return diagonal_[i]; }
    const std::vector<double>& diagonal() const { return diagonal_; }

    std::size_t size() const { return n_; }
    const KernelSpec& spec() const { return spec_; }
    bool full_mode() const { return full_mode_; }
    std::size_t lru_capacity() const { return capacity_; }

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }

private:
    void compute_row(std::size_t i, double* out) const;

    KernelSpec spec_;
    const Dataset* data_;
    std::size_t n_;
    bool full_mode_;
    std::size_t capacity_ = 0;

    std::vector<double> diagonal_;
    std::vector<double> full_;                       // n*n when full_mode_

    // LRU bookkeeping (row index -> slot), most recent at front.
    std::list<std::size_t> lru_order_;
    std::unordered_map<std::size_t, std::pair<std::size_t, std::list<std::size_t>::iterator>> slot_of_;
    std::vector<double> slabs_;                      // capacity_ * n_
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

} // namespace sklr

#endif
