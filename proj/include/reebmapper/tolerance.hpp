#pragma once

namespace reebmapper {

// Absolute tolerance used by every open-set nonemptiness test.  An
// intersection counts as nonempty only when its slack exceeds tol();
// boundary-touching configurations are treated as empty, consistent with
// open covers.  Overridable through the REEBMAPPER_TOL environment
// variable (read once) or set_tolerance().
double tolerance();
void set_tolerance(double value);

}  // namespace reebmapper
