#include "epsplit/trace_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "epsplit/errors.hpp"

namespace epsplit {

namespace {

void appendVectorHeader(std::string& h, const char* stem, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    h += ',';
    h += stem;
    h += '_';
    h += std::to_string(i);
  }
}

std::vector<std::string> splitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string traceCsvHeader(std::size_t n) {
  std::string h = "k,beta,eta,lambda,deltaZ,restarted";
  appendVectorHeader(h, "x", n);
  appendVectorHeader(h, "y", n);
  appendVectorHeader(h, "xnext", n);
  appendVectorHeader(h, "z", n);
  h += ",prox1_iters,prox2_iters,prox1_residual,prox2_residual";
  return h;
}

void writeTraceCsv(std::ostream& out, const std::vector<IterationRecord>& trace,
                   std::size_t n) {
  out << traceCsvHeader(n) << '\n';
  for (const IterationRecord& r : trace) {
    if (r.x.size() != n || r.y.size() != n || r.xNext.size() != n ||
        r.z.size() != n)
      throw ContractError("writeTraceCsv: record dimension mismatch");
    out << r.k << ',' << formatDouble(r.beta) << ',' << formatDouble(r.eta)
        << ',' << formatDouble(r.lambda) << ',' << formatDouble(r.deltaZ)
        << ',' << (r.restarted ? 1 : 0);
    for (double v : r.x) out << ',' << formatDouble(v);
    for (double v : r.y) out << ',' << formatDouble(v);
    for (double v : r.xNext) out << ',' << formatDouble(v);
    for (double v : r.z) out << ',' << formatDouble(v);
    out << ',' << r.prox1Iterations << ',' << r.prox2Iterations << ','
        << formatDouble(r.prox1Residual) << ',' << formatDouble(r.prox2Residual)
        << '\n';
  }
}

std::vector<IterationRecord> readTraceCsv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw ContractError("readTraceCsv: empty input");
  const auto cols = splitCsvLine(header);
  std::size_t n = 0;
  for (const auto& c : cols) {
    if (c.rfind("x_", 0) == 0) ++n;
  }
  if (cols != splitCsvLine(traceCsvHeader(n)))
    throw ContractError("readTraceCsv: unexpected header");

  std::vector<IterationRecord> trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = splitCsvLine(line);
    if (f.size() != 10 + 4 * n)
      throw ContractError("readTraceCsv: bad field count");
    IterationRecord r;
    std::size_t at = 0;
    r.k = std::stol(f[at++]);
    r.beta = parseDouble(f[at++]);
    r.eta = parseDouble(f[at++]);
    r.lambda = parseDouble(f[at++]);
    r.deltaZ = parseDouble(f[at++]);
    r.restarted = f[at++] == "1";
    auto readVec = [&](Vector& v) {
      v.resize(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = parseDouble(f[at++]);
    };
    readVec(r.x);
    readVec(r.y);
    readVec(r.xNext);
    readVec(r.z);
    r.prox1Iterations = std::stol(f[at++]);
    r.prox2Iterations = std::stol(f[at++]);
    r.prox1Residual = parseDouble(f[at++]);
    r.prox2Residual = parseDouble(f[at++]);
    trace.push_back(std::move(r));
  }
  return trace;
}

void writeTraceJsonl(std::ostream& out,
                     const std::vector<IterationRecord>& trace) {
  for (const IterationRecord& r : trace) {
    nlohmann::json j;
    j["k"] = r.k;
    j["beta"] = r.beta;
    j["eta"] = r.eta;
    j["lambda"] = r.lambda;
    j["deltaZ"] = r.deltaZ;
    j["restarted"] = r.restarted;
    j["x"] = r.x;
    j["y"] = r.y;
    j["xnext"] = r.xNext;
    j["z"] = r.z;
    j["prox1_iters"] = r.prox1Iterations;
    j["prox2_iters"] = r.prox2Iterations;
    j["prox1_residual"] = r.prox1Residual;
    j["prox2_residual"] = r.prox2Residual;
    out << j.dump() << '\n';
  }
}

std::vector<IterationRecord> readTraceJsonl(std::istream& in) {
  std::vector<IterationRecord> trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    IterationRecord r;
    r.k = j.at("k").get<long>();
    r.beta = j.at("beta").get<double>();
    r.eta = j.at("eta").get<double>();
    r.lambda = j.at("lambda").get<double>();
    r.deltaZ = j.at("deltaZ").get<double>();
    r.restarted = j.at("restarted").get<bool>();
    r.x = j.at("x").get<Vector>();
    r.y = j.at("y").get<Vector>();
    r.xNext = j.at("xnext").get<Vector>();
    r.z = j.at("z").get<Vector>();
    r.prox1Iterations = j.at("prox1_iters").get<long>();
    r.prox2Iterations = j.at("prox2_iters").get<long>();
    r.prox1Residual = j.at("prox1_residual").get<double>();
    r.prox2Residual = j.at("prox2_residual").get<double>();
    trace.push_back(std::move(r));
  }
  return trace;
}

void writeTraceFile(const std::string& path,
                    const std::vector<IterationRecord>& trace, std::size_t n) {
  std::ofstream out(path);
  if (!out) throw ContractError("writeTraceFile: cannot open " + path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    writeTraceCsv(out, trace, n);
  } else {
    writeTraceJsonl(out, trace);
  }
}

}  // namespace epsplit
