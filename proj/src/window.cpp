#include "fibla/window.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fibla/error.hpp"

namespace fibla {

std::string Provenance::to_string() const {
  std::ostringstream os;
  os << (generator.empty() ? "literal" : generator);
  if (!lambda.empty()) os << ";lambda=" << lambda;
  if (p) os << ";p=" << *p;
  if (index) os << ";k=" << *index;
  return os.str();
}

SeqWindow::SeqWindow(std::vector<Rational> values, Provenance provenance)
    : values_(std::move(values)), provenance_(std::move(provenance)) {
  if (values_.empty()) throw Error(ErrorCode::kWindowMismatch, "empty window");
}

SeqWindow SeqWindow::zeros(std::size_t n, Provenance provenance) {
  return SeqWindow(std::vector<Rational>(n), std::move(provenance));
}

Rational SeqWindow::at(long i) const {
  if (i < 0) return Rational(0);
  const auto idx = static_cast<std::size_t>(i);
  if (idx >= values_.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "index " + std::to_string(idx) + " outside window of " + std::to_string(size()));
  }
  return values_[idx];
}

SeqWindow SeqWindow::prefix(std::size_t n) const {
  if (n == 0 || n > size()) {
    throw Error(ErrorCode::kWindowMismatch,
                "prefix " + std::to_string(n) + " of window " + std::to_string(size()));
  }
  return SeqWindow(std::vector<Rational>(values_.begin(), values_.begin() + static_cast<long>(n)),
                   provenance_);
}

RealWindow::RealWindow(std::vector<Real> values, Provenance provenance)
    : values_(std::move(values)), provenance_(std::move(provenance)) {
  if (values_.empty()) throw Error(ErrorCode::kWindowMismatch, "empty window");
}

RealWindow RealWindow::from_exact(const SeqWindow& w, long precision) {
  std::vector<Real> v;
  v.reserve(w.size());
  for (const auto& q : w.values()) v.push_back(Real::exact(q, precision));
  return RealWindow(std::move(v), w.provenance());
}

SeqWindow read_window_csv(std::istream& in, Provenance provenance) {
  std::vector<Rational> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r,");
    values.push_back(Rational::parse(line.substr(b, e - b + 1)));
  }
  if (values.empty()) throw Error(ErrorCode::kParse, "sequence file holds no values");
  return SeqWindow(std::move(values), std::move(provenance));
}

SeqWindow read_window_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_window_csv(in, Provenance{"file:" + path, "", std::nullopt, std::nullopt});
}

void write_window_csv(std::ostream& out, const SeqWindow& w) {
  for (const auto& v : w.values()) out << v << '\n';
}

}  // namespace fibla
