#pragma once

#include <exception>
#include <mutex>

namespace qli {

// Kernels with data-parallel loops take one of these. Serial is the
// reference path the parallel one is tested against; results are identical.
enum class Exec { Serial, Parallel };

// Carries the first exception out of an OpenMP region, which must not throw.
class ExceptionSlot {
public:
    template <class F>
    void run(F&& f) noexcept
    {
        try {
            f();
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_)
                error_ = std::current_exception();
        }
    }

    void rethrow() const
    {
        if (error_)
            std::rethrow_exception(error_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

} // namespace qli
