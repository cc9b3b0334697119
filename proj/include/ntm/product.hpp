#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "ntm/machine.hpp"

namespace ntm {

/// Producer output port -> consumer input tape.
using ProductWiring = std::map<std::size_t, std::size_t>;

/// A machine with one halting state and no tapes or ports. Composing with it
/// reproduces the consumer alone.
MachineSpec empty_producer();

/// Name of the product state pairing consumer state `qm` with producer state `qh`.
std::string product_state(const std::string& qm, const std::string& qh);

/// Builds one machine that simulates `consumer` together with `producer`
/// printing on the consumer's input tapes, both running at the same speed.
///
/// The product has states Q_m x Q_h (no bookkeeping states), the consumer's
/// working tapes followed by the producer's, the consumer's input tapes, and
/// output ports [consumer ports..., producer ports...]. The producer ports are
/// feedback links into the input tapes given by `wiring`, so the consumer's
/// tapes become internal. Rules are fully concrete: one per reachable
/// (state pair, working symbols, scanned inputs) where at least one half has
/// a rule to fire.
///
/// Throws IncompatibleWiring when the producer has input tapes, a producer
/// port is left unwired or wired to a missing or shared tape, the speeds
/// differ, or either machine already uses feedback. Throws InvalidMachine for
/// malformed inputs.
MachineSpec compose_product(const MachineSpec& consumer, const MachineSpec& producer, const ProductWiring& wiring);

}  // namespace ntm
