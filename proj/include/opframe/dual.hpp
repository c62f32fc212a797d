#pragma once

#include <string>

#include "opframe/seqops.hpp"

namespace opframe {

enum class Producer { WeakADual, KDual, Interchange, Canonical, User };
std::string to_string(Producer producer);
Producer parse_producer(const std::string& name);

// A constructed companion family ({t_n}, {k_n} or {h_n}) and how it was made.
// When graph_space is set the vectors live in the domain of an operator and
// pair with it through the graph inner product.
struct DualSequence {
  FrameSequence sequence;
  Producer producer = Producer::User;
  double certificate_residual = 0.0;
  bool graph_space = false;
};

}  // namespace opframe
