#include "cmseq/errors.hpp"

namespace cmseq {

void throw_shape(const std::string& what) { throw ShapeMismatch(what); }

}  // namespace cmseq
