#pragma once

/**
 * @file enumerate.hpp
 * @brief Exhaustive scans and theorem-verification harnesses.
 *
 * Every scan partitions its candidate range into contiguous blocks, one per
 * worker, and merges the per-block results in block order, so the output is
 * identical for any thread count.
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "nsemi/algebra.hpp"
#include "nsemi/boolcls.hpp"
#include "nsemi/error.hpp"
#include "nsemi/finops.hpp"
#include "nsemi/mlpoly.hpp"

namespace nsemi {

struct EnumOptions {
    Limits limits{};
    unsigned threads = 1;  // 0 = hardware concurrency
};

struct EnumerationReport {
    std::string suite;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::uint64_t scanned = 0;
    std::uint64_t associative = 0;
    std::map<std::string, std::uint64_t> histogram;
    std::optional<bool> verdict;
    std::int64_t elapsed_ms = 0;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    bool passed() const { return verdict.value_or(false); }

    std::uint64_t histogram_total() const {
        std::uint64_t total = 0;
        for (const auto& [key, count] : histogram) total += count;
        return total;
    }
};

namespace detail {

inline unsigned worker_count(unsigned requested, std::uint64_t work) {
    unsigned t = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
    if (work < t) t = static_cast<unsigned>(std::max<std::uint64_t>(work, 1));
    return t;
}

/// Runs body(begin, end, out) on contiguous blocks of [0, total) and concatenates outputs in block order.
template <class Item, class Body>
std::vector<Item> parallel_scan(std::uint64_t total, unsigned threads, Body body) {
    const unsigned workers = worker_count(threads, total);
    std::vector<std::vector<Item>> parts(workers);
    auto run = [&](unsigned w) {
        std::uint64_t begin = total * w / workers;
        std::uint64_t end = total * (w + 1) / workers;
        body(begin, end, parts[w]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    run(w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    std::vector<Item> merged;
    for (auto& part : parts) {
        merged.insert(merged.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return merged;
}

class Stopwatch {
public:
    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Whether f is invariant under every permutation of its arguments.
inline bool is_symmetric(const FiniteOp& f) {
    for (std::uint64_t idx = 0; idx < f.size(); ++idx) {
        std::vector<Value> args = decode_index(idx, f.k(), f.n());
        for (std::uint32_t i = 0; i + 1 < f.n(); ++i) {
            std::swap(args[i], args[i + 1]);
            bool same = f[encode_tuple(args, f.k())] == f[idx];
            std::swap(args[i], args[i + 1]);
            if (!same) return false;
        }
    }
    return true;
}

inline std::string histogram_key(const FiniteOp& f, const Limits& limits) {
    if (f.k() == 2) {
        if (f.n() == 1) return std::string(to_string(classify_unary(f)));
        return std::string(to_string(classify_boolean(f, limits).form));
    }
    return is_symmetric(f) ? "symmetric" : "nonsymmetric";
}

}  // namespace detail

struct AssocOpsResult {
    std::vector<FiniteOp> ops;  // lexicographic table order
    EnumerationReport report;
};

/**
 * All associative n-ary operations on a k-element carrier. Boolean tables of
 * up to 64 cells are scanned in packed form.
 */
inline AssocOpsResult enumerate_assoc_ops(std::uint32_t k, std::uint32_t n, const EnumOptions& opts = {}) {
    detail::Stopwatch clock;
    if (k < 1 || n < 1) throw input_error("enumeration needs k >= 1 and n >= 1");
    const std::uint64_t cells = require_size(k, n, opts.limits, "operation table");
    const std::uint64_t candidates = require_size(k, cells, opts.limits, "table enumeration");
    require_size(k, 2 * n - 1, opts.limits, "associativity check");

    AssocOpsResult result;
    if (k == 2 && cells <= 64) {
        // Candidate c is the packed table itself: bit j is cell j.
        result.ops = detail::parallel_scan<FiniteOp>(
            candidates, opts.threads, [&](std::uint64_t begin, std::uint64_t end, std::vector<FiniteOp>& out) {
                for (std::uint64_t c = begin; c < end; ++c) {
                    std::uint64_t word = c;
                    if (PackedBoolOp::packed_is_associative({&word, 1}, n, opts.limits)) {
                        out.push_back(PackedBoolOp(n, {word}).to_op());
                    }
                }
            });
    } else {
        // Candidate c lists the table as base-k digits, cell 0 most significant.
        result.ops = detail::parallel_scan<FiniteOp>(
            candidates, opts.threads, [&](std::uint64_t begin, std::uint64_t end, std::vector<FiniteOp>& out) {
                if (begin == end) return;
                std::vector<Value> table = decode_index(begin, k, static_cast<std::uint32_t>(cells));
                for (std::uint64_t c = begin; c < end; ++c) {
                    FiniteOp f(k, n, table);
                    if (is_associative(f, opts.limits)) out.push_back(std::move(f));
                    for (std::size_t pos = table.size(); pos-- > 0;) {
                        if (++table[pos] < k) break;
                        table[pos] = 0;
                    }
                }
            });
    }
    std::sort(result.ops.begin(), result.ops.end());

    EnumerationReport& r = result.report;
    r.suite = "assoc_ops";
    r.params = {{"k", k}, {"n", n}};
    r.scanned = candidates;
    r.associative = result.ops.size();
    for (const FiniteOp& f : result.ops) ++r.histogram[detail::histogram_key(f, opts.limits)];
    r.elapsed_ms = clock.elapsed_ms();
    return result;
}

struct MultilinearEnumResult {
    std::vector<MultilinearPoly> associative;  // candidate order
    EnumerationReport report;
};

/// The polynomial with coefficient of monomial m equal to base-p digit m of `index`.
inline MultilinearPoly polynomial_from_index(std::uint64_t index, RingSpec ring, std::uint32_t n) {
    const std::uint64_t p = ring.modulus();
    MultilinearPoly poly(ring, n);
    for (Monomial m = 0; index != 0; ++m, index /= p) {
        if (index % p) poly.set_coef(m, RingElem(ring, static_cast<long long>(index % p)));
    }
    return poly;
}

/**
 * Scans every multilinear polynomial in n variables over GF(p), decides
 * associativity symbolically and classifies the associative ones. When
 * `oracle_stride` > 0, every stride-th candidate is also checked pointwise.
 * The verdict fails on any symbolic/classification or symbolic/pointwise
 * disagreement.
 */
inline MultilinearEnumResult enumerate_assoc_multilinear(std::uint64_t prime, std::uint32_t n,
                                                         const EnumOptions& opts = {},
                                                         std::uint64_t oracle_stride = 0) {
    detail::Stopwatch clock;
    const RingSpec ring = RingSpec::prime_field(prime);
    if (n < 2) throw input_error("multilinear enumeration needs n >= 2");
    const std::uint64_t monomials = require_size(2, n, opts.limits, "coefficient vector");
    const std::uint64_t candidates = require_size(prime, monomials, opts.limits, "polynomial enumeration");
    require_size(2, 2 * n - 1, opts.limits, "symbolic composition");
    if (oracle_stride > 0) require_size(prime, 2 * n - 1, opts.limits, "pointwise oracle");

    struct Outcome {
        std::uint64_t index;
        FormKind kind;
        bool assoc;
        bool oracle_checked;
        bool oracle_agrees;
        MarMatForm form;
    };

    std::vector<Outcome> outcomes = detail::parallel_scan<Outcome>(
        candidates, opts.threads, [&](std::uint64_t begin, std::uint64_t end, std::vector<Outcome>& out) {
            for (std::uint64_t c = begin; c < end; ++c) {
                MultilinearPoly p = polynomial_from_index(c, ring, n);
                bool assoc = is_associative_poly(p);
                MarMatForm form = classify_marmat(p);
                FormKind kind = kind_of(form);
                bool checked = oracle_stride > 0 && c % oracle_stride == 0;
                bool agrees = !checked || pointwise_associative(p, opts.limits) == assoc;
                if (assoc || kind != FormKind::None || !agrees) out.push_back({c, kind, assoc, checked, agrees, form});
            }
        });

    MultilinearEnumResult result;
    EnumerationReport& r = result.report;
    r.suite = "assoc_multilinear";
    r.params = {{"prime", prime}, {"n", n}};
    r.scanned = candidates;
    for (FormKind kind : kFormKinds) r.histogram[std::string(to_string(kind))] = 0;

    std::uint64_t form_mismatches = 0;
    std::uint64_t oracle_mismatches = 0;
    for (const Outcome& o : outcomes) {
        if (o.assoc != (o.kind != FormKind::None)) ++form_mismatches;
        if (!o.oracle_agrees) ++oracle_mismatches;
        if (!o.assoc) continue;
        ++r.associative;
        if (o.kind != FormKind::None) ++r.histogram[std::string(to_string(o.kind))];
        result.associative.push_back(polynomial_from_index(o.index, ring, n));
    }
    const std::uint64_t oracle_checked = oracle_stride == 0 ? 0 : (candidates + oracle_stride - 1) / oracle_stride;
    r.details = {{"oracle_stride", oracle_stride},
                 {"oracle_checked", oracle_checked},
                 {"oracle_mismatches", oracle_mismatches},
                 {"form_mismatches", form_mismatches}};
    r.verdict = form_mismatches == 0 && oracle_mismatches == 0;
    r.elapsed_ms = clock.elapsed_ms();
    return result;
}

/// The eight canonical n-ary tables, sorted.
inline std::vector<FiniteOp> canonical_set(std::uint32_t n, const Limits& limits = {}) {
    std::vector<FiniteOp> ops;
    for (BoolForm f : kBoolForms) ops.push_back(canonical_op(f, n, limits));
    std::sort(ops.begin(), ops.end());
    return ops;
}

/**
 * Checks the two-element classification at arity n. Up to n = 4 the full
 * table space is scanned; for n = 5, 6 the eight families are checked for
 * associativity, distinctness and probe round-trip.
 */
inline EnumerationReport verify_two_element_theorem(std::uint32_t n, const EnumOptions& opts = {}) {
    detail::Stopwatch clock;
    if (n < 2) throw input_error("the two-element classification starts at n = 2");
    if (n > 6) throw infeasible_size("infeasible size: two-element verification supports n <= 6");
    EnumerationReport r;
    r.suite = "two-element";
    r.params = {{"n", n}};
    const std::vector<FiniteOp> expected = canonical_set(n, opts.limits);

    if (n <= 4) {
        AssocOpsResult scan = enumerate_assoc_ops(2, n, opts);
        r.scanned = scan.report.scanned;
        r.associative = scan.report.associative;
        r.histogram = scan.report.histogram;
        r.verdict = scan.ops == expected;
        r.details = {{"method", "exhaustive"}};
    } else {
        bool ok = std::adjacent_find(expected.begin(), expected.end()) == expected.end();
        for (BoolForm form : kBoolForms) {
            FiniteOp f = canonical_op(form, n, opts.limits);
            bool assoc = is_associative(f, opts.limits);
            ok = ok && assoc && classify_by_probes(f) == BoolFormDescriptor{form, n};
            ++r.scanned;
            if (assoc) {
                ++r.associative;
                ++r.histogram[std::string(to_string(form))];
            }
        }
        r.verdict = ok;
        r.details = {{"method", "canonical-families"}};
    }
    r.details["expected"] = expected.size();
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

/**
 * Table-level primitivity on {0, 1} for arities up to 10: each associative
 * operation of arity n is tested against every associative operation of the
 * smaller admissible arities. Arities up to 4 come from exhaustive scans,
 * larger ones from the canonical families.
 */
class BooleanCatalog {
public:
    explicit BooleanCatalog(const EnumOptions& opts = {}) : opts_(opts) {}

    const std::vector<FiniteOp>& at(std::uint32_t n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        std::vector<FiniteOp> ops;
        if (n == 1) {
            for (Value a = 0; a < 2; ++a) {
                for (Value b = 0; b < 2; ++b) ops.push_back(FiniteOp(2, 1, {a, b}));
            }
        } else if (n <= 4) {
            ops = enumerate_assoc_ops(2, n, opts_).ops;
        } else {
            ops = canonical_set(n, opts_.limits);
        }
        return cache_.emplace(n, std::move(ops)).first->second;
    }

    /// Catalog restricted to the arities below n.
    AssocCatalog below(std::uint32_t n) {
        AssocCatalog catalog;
        for (std::uint32_t m = 1; m < n; ++m) catalog[m] = at(m);
        return catalog;
    }

private:
    EnumOptions opts_;
    std::map<std::uint32_t, std::vector<FiniteOp>> cache_;
};

/// Arity at or below which verify_proposition compares derived tables.
inline constexpr std::uint32_t kTablePrimitivityMaxArity = 10;

/**
 * For every n <= max_n, compares the primitive associative operations on
 * {0, 1} with the predicted set: everything for n <= 2, otherwise SumBar^(n)
 * exactly when n - 1 is a power of two. Above arity 10 the derived operations
 * of SumBar^(m) are computed from the parity rule (odd iterate count gives
 * SumBar, even gives Sum) instead of tables.
 */
inline EnumerationReport verify_proposition(std::uint32_t max_n, const EnumOptions& opts = {}) {
    detail::Stopwatch clock;
    if (max_n < 1) throw input_error("max_n must be at least 1");
    if (max_n > 4096) throw infeasible_size("infeasible size: max_n above 4096");
    EnumerationReport r;
    r.suite = "primitive";
    r.params = {{"max_n", max_n}};
    r.histogram = {{"primitive", 0}, {"derivable", 0}};
    BooleanCatalog catalog(opts);
    bool ok = true;
    nlohmann::ordered_json per_arity = nlohmann::ordered_json::array();
    std::vector<std::uint32_t> sumbar_arities;

    for (std::uint32_t n = 1; n <= max_n; ++n) {
        nlohmann::ordered_json entry = {{"n", n}};
        if (n <= kTablePrimitivityMaxArity) {
            const std::vector<FiniteOp>& ops = catalog.at(n);
            AssocCatalog smaller = catalog.below(n);
            std::vector<FiniteOp> primitive;
            for (const FiniteOp& f : ops) {
                PrimitivityResult res = is_primitive(f, smaller, opts.limits);
                ++r.scanned;
                ++r.associative;
                if (res.primitive) {
                    primitive.push_back(f);
                    ++r.histogram["primitive"];
                } else {
                    ++r.histogram["derivable"];
                }
            }
            std::vector<FiniteOp> predicted;
            if (n <= 2) {
                predicted = ops;
            } else if (primitive_sumbar_arity(n)) {
                predicted.push_back(canonical_op(BoolForm::SumBar, n));
            }
            bool match = primitive == predicted;
            ok = ok && match;
            if (n >= 2 && std::find(primitive.begin(), primitive.end(), canonical_op(BoolForm::SumBar, n)) !=
                              primitive.end()) {
                sumbar_arities.push_back(n);
            }
            entry["method"] = "table";
            entry["primitive"] = primitive.size();
            entry["match"] = match;
        } else {
            // Other seven families derive from their binary counterparts; only SumBar^(n) can be primitive.
            bool derivable = false;
            for (std::uint32_t m = 2; m < n && !derivable; ++m) {
                if ((n - 1) % (m - 1) != 0) continue;
                std::uint64_t ell = (n - 1) / (m - 1);
                derivable = ell % 2 == 1;  // parity rule: odd ell yields SumBar^(n)
            }
            bool primitive = !derivable;
            bool match = primitive == primitive_sumbar_arity(n);
            ok = ok && match;
            r.scanned += 8;
            r.associative += 8;
            r.histogram["primitive"] += primitive ? 1 : 0;
            r.histogram["derivable"] += primitive ? 7 : 8;
            if (primitive) sumbar_arities.push_back(n);
            entry["method"] = "parity";
            entry["primitive"] = primitive ? 1 : 0;
            entry["match"] = match;
        }
        per_arity.push_back(std::move(entry));
    }
    r.details = {{"primitive_sumbar_arities", sumbar_arities}, {"per_arity", std::move(per_arity)}};
    r.verdict = ok;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

/// Binary operation (i, j)(k, l) = (i, l) on rows x cols, element (i, j) encoded i*cols + j.
inline FiniteOp rectangular_band(std::uint32_t rows, std::uint32_t cols, const Limits& limits = {}) {
    if (rows < 1 || cols < 1) throw input_error("rectangular band needs rows, cols >= 1");
    const std::uint64_t k64 = std::uint64_t{rows} * cols;
    if (k64 > 0xFFFFFFFFULL) throw infeasible_size("infeasible size: carrier too large");
    const auto k = static_cast<std::uint32_t>(k64);
    return FiniteOp::tabulate(
        k, 2, [cols](std::span<const Value> a) { return (a[0] / cols) * cols + a[1] % cols; }, limits);
}

/// (x_1, ..., x_n) -> phi(x_1) for an idempotent unary map phi.
inline FiniteOp idempotent_map_op(const std::vector<Value>& phi, std::uint32_t n, const Limits& limits = {}) {
    if (phi.empty()) throw input_error("phi must have at least one entry");
    if (n < 1) throw input_error("arity must be at least 1");
    const auto k = static_cast<std::uint32_t>(phi.size());
    for (Value v : phi) {
        if (v >= k) throw input_error("phi entry " + std::to_string(v) + " outside carrier of size " + std::to_string(k));
    }
    for (Value x = 0; x < k; ++x) {
        if (phi[phi[x]] != phi[x]) {
            throw input_error("phi is not idempotent: phi(phi(" + std::to_string(x) + ")) = " +
                              std::to_string(phi[phi[x]]) + " != " + std::to_string(phi[x]));
        }
    }
    return FiniteOp::tabulate(k, n, [&phi](std::span<const Value> a) { return phi[a[0]]; }, limits);
}

}  // namespace nsemi
