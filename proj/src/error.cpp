#include "topoconn/error.hpp"

namespace topoconn {

void fail(const std::string& code, const std::string& message, const std::string& location) {
  throw Error(code, message, location);
}

}  // namespace topoconn
