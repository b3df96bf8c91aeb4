#include "alphaleak/errors.hpp"

namespace alphaleak {

void check_identity(bool ok, const char* what) {
  if (!ok) {
    throw std::logic_error(std::string("internal identity violated: ") + what);
  }
}

}  // namespace alphaleak
