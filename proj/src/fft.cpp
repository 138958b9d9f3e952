#include "layerstokes/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace layerstokes::fft {

namespace {

std::mutex planner_mutex;

// FFTW planning is not thread safe; cache plans by shape and reuse them with
// fftw_execute_dft on the caller's buffer (alignment-agnostic via ESTIMATE).
using Key = std::tuple<int, int, int, bool, bool>;  // n0, n1, nz, forward, full
std::map<Key, fftw_plan>& plan_cache() {
    static std::map<Key, fftw_plan> cache;
    return cache;
}

fftw_plan get_plan(int n0, int n1, int nz, bool forward, bool full_rank) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    const Key key{n0, n1, nz, forward, full_rank};
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // Plan on a scratch buffer; FFTW_ESTIMATE plans do not depend on data.
    fftw_complex* scratch = fftw_alloc_complex(static_cast<size_t>(n0) * n1 * nz);
    fftw_plan plan = nullptr;
    const int sign = forward ? FFTW_FORWARD : FFTW_BACKWARD;
    if (full_rank) {
        int n[3] = {n0, n1, nz};
        plan = fftw_plan_dft(3, n, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    } else {
        int n[2] = {n0, n1};
        plan = fftw_plan_many_dft(2, n, nz, scratch, nullptr, nz, 1, scratch, nullptr, nz, 1,
                                  sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    fftw_free(scratch);
    cache.emplace(key, plan);
    return plan;
}

}  // namespace

void tangential(std::complex<double>* data, int n0, int n1, int n_z, bool forward) {
    fftw_plan plan = get_plan(n0, n1, n_z, forward, false);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void full(std::complex<double>* data, int n0, int n1, int nz, bool forward) {
    fftw_plan plan = get_plan(n0, n1, nz, forward, true);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

}  // namespace layerstokes::fft
