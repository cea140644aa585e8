#include "evf/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <new>
#include <string>
#include <thread>

namespace evf {

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
    void* p = fftw_malloc(n * sizeof(T));
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
    fftw_free(p);
}

template struct FftwAllocator<std::complex<double>>;

int fft_thread_count() {
    if (const char* env = std::getenv("EVF_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void init_threads_once() {
    static std::once_flag flag;
    std::call_once(flag, [] { fftw_init_threads(); });
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft2D::Fft2D(int n) : n_(n) {
    init_threads_once();
    std::lock_guard lock(planner_mutex());
    fftw_plan_with_nthreads(fft_thread_count());
    FftBuffer scratch(static_cast<std::size_t>(n) * n);
    forward_plan_ = fftw_plan_dft_2d(n, n, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                     FFTW_FORWARD, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_2d(n, n, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft2D::~Fft2D() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft2D::forward(std::complex<double>* data) const {
    fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data), as_fftw(data));
}

void Fft2D::inverse(std::complex<double>* data) const {
    fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(data), as_fftw(data));
}

}  // namespace evf
