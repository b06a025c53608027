#include "vtrans/vec128.hpp"

#include <atomic>
#include <cstdlib>

namespace vtrans {

namespace {

std::atomic<bool> g_force_emulated{false};

bool detect_native() {
#if VTRANS_HAVE_SSE
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("sse4.1") && __builtin_cpu_supports("ssse3");
#else
  return true;
#endif
#else
  return false;
#endif
}

bool env_forces_emulated() {
  const char* e = std::getenv("VTRANS_FORCE_EMULATED");
  return e != nullptr && e[0] != '\0' && e[0] != '0';
}

}  // namespace

bool native_backend_available() {
  static const bool avail = detect_native();
  return avail;
}

void force_emulated_backend(bool force) { g_force_emulated.store(force); }

Backend active_backend() {
  static const bool env_forced = env_forces_emulated();
  if (env_forced || g_force_emulated.load()) return Backend::emulated;
  return native_backend_available() ? Backend::native : Backend::emulated;
}

}  // namespace vtrans
