#ifndef LASEKIT_CLI_HANDLES_HPP
#define LASEKIT_CLI_HANDLES_HPP

#include <memory>
#include <stdexcept>
#include <string>

#include "lasekit/lasekit.h"

namespace lasekit::cli {

struct ModelDeleter {
    void operator()(lk_model* m) const { lk_model_free(m); }
};
struct SeriesDeleter {
    void operator()(lk_series* s) const { lk_series_free(s); }
};
struct TrajectoryDeleter {
    void operator()(lk_trajectory* t) const { lk_trajectory_free(t); }
};

using ModelHandle = std::unique_ptr<lk_model, ModelDeleter>;
using SeriesHandle = std::unique_ptr<lk_series, SeriesDeleter>;
using TrajectoryHandle = std::unique_ptr<lk_trajectory, TrajectoryDeleter>;

/// A C API call failed; carries the status and the library's message.
class ApiError : public std::runtime_error {
public:
    ApiError(lk_status status, const std::string& context)
        : std::runtime_error(context + ": " + lk_status_string(status) +
                             (*lk_last_error() ? std::string(" (") + lk_last_error() + ")" : "")),
          m_status(status)
    {
    }
    lk_status status() const { return m_status; }

private:
    lk_status m_status;
};

inline void check(lk_status status, const char* context)
{
    if (status != LK_OK)
        throw ApiError(status, context);
}

}  // namespace lasekit::cli

#endif
