#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace evf {

// Allocator that hands out fftw_malloc'd (SIMD-aligned) storage, so buffers can
// be used with a plan created on a different buffer.
template <class T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) {}
    T* allocate(std::size_t n);
    void deallocate(T* p, std::size_t) noexcept;
    template <class U>
    bool operator==(const FftwAllocator<U>&) const {
        return true;
    }
};

using FftBuffer = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

// In-place unnormalised 2-D complex DFT of an n x n row-major array.
// Plans are made with FFTW_ESTIMATE so the transform, and every result built
// on it, is bit-reproducible from run to run. Executing a plan is thread-safe;
// construction is serialised internally.
class Fft2D {
public:
    explicit Fft2D(int n);
    ~Fft2D();
    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    int n() const { return n_; }
    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

private:
    int n_;
    void* forward_plan_;
    void* inverse_plan_;
};

// Thread count used for FFTs: EVF_THREADS if set (>= 1), else hardware concurrency.
int fft_thread_count();

}  // namespace evf
