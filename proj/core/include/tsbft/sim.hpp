// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "tsbft/scenario.hpp"
#include "tsbft/trace.hpp"

namespace tsbft {

// Runs one scenario to completion: all non-faulty nodes committed, or the
// tick/event horizon reached. Deterministic: identical scenarios (seed
// included) produce byte-identical traces.
Trace run(const Scenario& sc);

} // namespace tsbft
