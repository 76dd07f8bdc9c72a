#include "sigpoly/adjacency.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "sigpoly/error.hpp"
#include "sigpoly/polyhedral.hpp"

namespace sigpoly {

std::size_t DecompositionState::nontrivial_count() const {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [](const FacetClass& c) { return !c.trivial; }));
}

std::vector<GeneratorFacet> DecompositionState::nontrivial() const {
    std::vector<GeneratorFacet> out;
    for (const auto& c : classes)
        if (!c.trivial) out.push_back(c.facet);
    return out;
}

BellInequality seed_facet(const PolytopeSpec& spec) {
    spec.validate();
    if (std::min(spec.n, spec.n_prime) <= spec.d) {
        throw Error(ErrorCode::ParameterOutOfRange, "a seed facet needs min{n, n'} > d");
    }
    if (spec.d == 1) {
        // -P(1|1) <= 0 in normal form: tight on every constant vertex except one.
        RationalMatrix g(spec.n_prime, spec.n);
        for (int y = 1; y < spec.n_prime; ++y) g(y, 0) = 1;
        return {std::move(g), Rational(1), "non-negativity"};
    }
    const int m = spec.d + 1;
    std::vector<int> f(spec.n_prime);
    for (int y = 0; y < spec.n_prime; ++y) f[y] = std::max(0, y - (spec.n_prime - m));
    BellInequality seed = lift_input(lift_output(ml_game(m, spec.d), f), spec.n - m);
    return seed;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Neighbors {
    std::vector<BellInequality> facets;
    std::size_t ridges = 0;
};

Neighbors expand(const BellInequality& rep, const VertexSet& vs, const HullOptions& hull_options) {
    Neighbors out;
    const auto ridges = enumerate_subfacets(rep, vs, hull_options);
    out.ridges = ridges.size();
    std::unordered_map<std::string, bool> seen;
    for (const auto& ridge : ridges) {
        const BellInequality rotated = rotate_facet(rep, ridge, vs);
        GeneratorFacet cls = canonical_class_rep(rotated);
        if (!seen.emplace(cls.key(), true).second) continue;
        out.facets.push_back(rotated);
    }
    return out;
}

}  // namespace

DecompositionState adjacency_decomposition(const PolytopeSpec& spec, const BellInequality& seed,
                                           const DecompositionOptions& options) {
    spec.validate();
    const auto start = Clock::now();
    const VertexSet vs(spec);
    if (seed.n() != spec.n || seed.n_prime() != spec.n_prime || !verify_facet(seed, vs).is_tight) {
        throw Error(ErrorCode::SeedNotFacet, "seed inequality is not a facet of the polytope");
    }

    HullOptions hull_options;
    if (options.budget.max_seconds) {
        hull_options.deadline =
            start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*options.budget.max_seconds));
    }

    DecompositionState state;
    state.spec = spec;
    state.seed = seed;

    std::mutex mu;
    std::condition_variable cv;
    std::unordered_map<std::string, std::size_t> index;
    std::deque<std::size_t> queue;
    std::size_t active = 0;
    bool stop = false;

    auto insert = [&](const BellInequality& rep) {
        GeneratorFacet cls = canonical_class_rep(reduce_to_hull(rep, spec));
        std::string key = cls.key();
        if (index.count(key)) return;
        FacetClass fc;
        fc.trivial = is_nonnegativity(cls.canonical);
        fc.facet = std::move(cls);
        index.emplace(std::move(key), state.classes.size());
        queue.push_back(state.classes.size());
        state.classes.push_back(std::move(fc));
    };
    insert(seed);

    auto budget_hit = [&]() {
        if (options.budget.max_classes && state.classes.size() >= *options.budget.max_classes) {
            state.budget_status = "max_classes reached";
            return true;
        }
        if (hull_options.deadline && Clock::now() > *hull_options.deadline) {
            state.budget_status = "max_seconds reached";
            return true;
        }
        return false;
    };

    auto worker = [&]() {
        std::unique_lock<std::mutex> lock(mu);
        while (true) {
            cv.wait(lock, [&] { return stop || !queue.empty() || active == 0; });
            if (stop || queue.empty()) {
                if (stop || active == 0) break;
                continue;
            }
            if (budget_hit()) {
                stop = true;
                state.partial = true;
                cv.notify_all();
                break;
            }
            const std::size_t current = queue.front();
            queue.pop_front();
            if (state.classes[current].trivial && !options.expand_trivial) continue;
            const BellInequality rep = state.classes[current].facet.canonical;
            ++active;
            lock.unlock();
            Neighbors found;
            bool timed_out = false;
            try {
                found = expand(rep, vs, hull_options);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::BudgetExceeded) {
                    lock.lock();
                    --active;
                    stop = true;
                    cv.notify_all();
                    throw;
                }
                timed_out = true;
            }
            lock.lock();
            --active;
            if (timed_out) {
                stop = true;
                state.partial = true;
                state.budget_status = "max_seconds reached";
                cv.notify_all();
                break;
            }
            state.ridges_processed += found.ridges;
            for (const auto& f : found.facets) insert(f);
            state.classes[current].status = ClassStatus::Considered;
            cv.notify_all();
        }
    };

    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mu;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                try {
                    worker();
                } catch (...) {
                    std::lock_guard<std::mutex> guard(failure_mu);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Skipped trivial classes stay unconsidered; the run is still complete for the nontrivial set
    // only when nothing else remains.
    if (!state.partial) {
        for (const auto& c : state.classes) {
            if (c.status == ClassStatus::Unconsidered && !c.trivial) {
                state.partial = true;
                state.budget_status = "incomplete";
            }
        }
    }
    state.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return state;
}

}  // namespace sigpoly
