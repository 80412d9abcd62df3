#include "swinf/rng.hpp"

#include "swinf/normal.hpp"

namespace swinf {

double RandomStream::normal() { return normal_quantile(uniform()); }

}  // namespace swinf
