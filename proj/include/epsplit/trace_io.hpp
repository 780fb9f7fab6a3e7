#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epsplit/solver.hpp"

namespace epsplit {

// Trace serialization. Two formats, both exact (shortest round-trip decimal
// for every double, so read(write(trace)) reproduces the records bit for bit):
//
//   CSV         one row per iteration; fixed column order
//               k, beta, eta, lambda, deltaZ, restarted,
//               x_0..x_{n-1}, y_0.., xnext_0.., z_0..,
//               prox1_iters, prox2_iters, prox1_residual, prox2_residual
//   JSON lines  one object per iteration with the same field names and the
//               vectors as arrays.

std::string traceCsvHeader(std::size_t n);
void writeTraceCsv(std::ostream& out, const std::vector<IterationRecord>& trace,
                   std::size_t n);
std::vector<IterationRecord> readTraceCsv(std::istream& in);

void writeTraceJsonl(std::ostream& out,
                     const std::vector<IterationRecord>& trace);
std::vector<IterationRecord> readTraceJsonl(std::istream& in);

// Writes CSV when the path ends in ".csv", JSON lines otherwise.
void writeTraceFile(const std::string& path,
                    const std::vector<IterationRecord>& trace, std::size_t n);

}  // namespace epsplit
