#pragma once

namespace imbalab {

// Selects between the OpenMP kernel and the serial reference it is tested against.
// Both produce identical results; `parallel` falls back to serial without OpenMP.
enum class Execution { serial, parallel };

}  // namespace imbalab
