#pragma once

namespace shadowlab {

/// Applies SHADOWLAB_THREADS (a positive integer) as the OpenMP worker cap.
/// Returns the resulting worker count. Unset or invalid values leave the
/// runtime default in place.
int configure_threads_from_env();

/// Current OpenMP worker cap (1 when built without OpenMP).
int worker_count();

void set_worker_count(int n);

}  // namespace shadowlab
