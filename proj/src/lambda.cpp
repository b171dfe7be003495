#include "fibla/lambda.hpp"

#include <fstream>
#include <sstream>

#include "fibla/error.hpp"

namespace fibla {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

LambdaSeq LambdaSeq::linear(const Rational& a, const Rational& b) {
  if (b.sign() <= 0) throw Error(ErrorCode::kNonPositiveStart, "linear offset " + b.to_string());
  if (a.sign() <= 0) throw Error(ErrorCode::kNotStrictlyIncreasing, "linear slope " + a.to_string());
  auto impl = std::make_shared<Impl>();
  impl->family = LambdaFamily::kLinear;
  impl->spec = "linear:" + a.to_string() + "," + b.to_string();
  impl->a = a;
  impl->b = b;
  return LambdaSeq(std::move(impl));
}

LambdaSeq LambdaSeq::geometric(const Rational& r, const Rational& c) {
  if (c.sign() <= 0) throw Error(ErrorCode::kNonPositiveStart, "geometric scale " + c.to_string());
  if (r <= Rational(1)) {
    throw Error(ErrorCode::kNotStrictlyIncreasing, "geometric ratio " + r.to_string());
  }
  auto impl = std::make_shared<Impl>();
  impl->family = LambdaFamily::kGeometric;
  impl->spec = "geometric:" + r.to_string() + "," + c.to_string();
  impl->a = r;
  impl->b = c;
  impl->summable = true;
  return LambdaSeq(std::move(impl));
}

LambdaSeq LambdaSeq::explicit_values(std::vector<Rational> values, TailRule tail,
                                     std::optional<Rational> ratio) {
  if (values.empty()) throw Error(ErrorCode::kNonPositiveStart, "empty explicit lambda");
  if (values[0].sign() <= 0) {
    throw Error(ErrorCode::kNonPositiveStart, "lambda_0 = " + values[0].to_string());
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw Error(ErrorCode::kNotStrictlyIncreasing,
                  "lambda_" + std::to_string(i) + " = " + values[i].to_string() +
                      " <= lambda_" + std::to_string(i - 1));
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->family = LambdaFamily::kExplicit;
  std::ostringstream spec;
  spec << "explicit:";
  for (std::size_t i = 0; i < values.size(); ++i) spec << (i ? "," : "") << values[i];
  impl->tail = tail;
  if (tail == TailRule::kLinear) {
    spec << ";tail:linear";
  } else if (tail == TailRule::kGeometric) {
    if (!ratio || *ratio <= Rational(1)) {
      throw Error(ErrorCode::kNotStrictlyIncreasing, "geometric tail needs a ratio > 1");
    }
    impl->tail_ratio = *ratio;
    impl->summable = true;
    spec << ";tail:geometric:" << *ratio;
  }
  impl->spec = spec.str();
  impl->values = std::move(values);
  return LambdaSeq(std::move(impl));
}

LambdaSeq LambdaSeq::custom(std::string name, std::function<Rational(std::size_t)> oracle,
                            bool reciprocal_summable, std::size_t check_window) {
  auto impl = std::make_shared<Impl>();
  impl->family = LambdaFamily::kCustom;
  impl->spec = "custom:" + name;
  impl->oracle = std::move(oracle);
  impl->summable = reciprocal_summable;
  LambdaSeq seq(std::move(impl));
  seq.validate(check_window);
  return seq;
}

LambdaSeq LambdaSeq::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kParse, "lambda spec needs 'family:params': " + std::string(spec));
  }
  const std::string family(spec.substr(0, colon));
  const std::string rest(spec.substr(colon + 1));
  if (family == "linear" || family == "geometric") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) {
      throw Error(ErrorCode::kParse, family + " needs two parameters: " + std::string(spec));
    }
    const Rational x = Rational::parse(parts[0]);
    const Rational y = Rational::parse(parts[1]);
    return family == "linear" ? linear(x, y) : geometric(x, y);
  }
  if (family == "file") {
    std::ifstream in(rest);
    if (!in) throw Error(ErrorCode::kIo, "cannot open lambda file " + rest);
    std::vector<Rational> values;
    TailRule tail = TailRule::kNone;
    std::optional<Rational> ratio;
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      if (line.rfind("tail:", 0) == 0) {
        const auto parts = split(line, ':');
        if (parts.size() == 2 && parts[1] == "linear") {
          tail = TailRule::kLinear;
        } else if (parts.size() == 2 && parts[1] == "none") {
          tail = TailRule::kNone;
        } else if (parts.size() == 3 && parts[1] == "geometric") {
          tail = TailRule::kGeometric;
          ratio = Rational::parse(parts[2]);
        } else {
          throw Error(ErrorCode::kParse, "bad tail rule '" + line + "'");
        }
        continue;
      }
      values.push_back(Rational::parse(line));
    }
    return explicit_values(std::move(values), tail, ratio);
  }
  throw Error(ErrorCode::kParse, "unknown lambda family '" + family + "'");
}

Rational LambdaSeq::at(long n) const {
  if (n < 0) return Rational(0);
  const auto idx = static_cast<std::size_t>(n);
  const Impl& m = *impl_;
  switch (m.family) {
    case LambdaFamily::kLinear:
      return m.a * Rational(static_cast<unsigned long>(idx)) + m.b;
    case LambdaFamily::kGeometric:
      return m.b * m.a.pow(idx);
    case LambdaFamily::kExplicit: {
      if (idx < m.values.size()) return m.values[idx];
      const std::size_t past = idx - (m.values.size() - 1);
      const Rational& last = m.values.back();
      if (m.tail == TailRule::kLinear) {
        const Rational step = m.values.size() > 1 ? last - m.values[m.values.size() - 2] : last;
        return last + step * Rational(static_cast<unsigned long>(past));
      }
      if (m.tail == TailRule::kGeometric) return last * m.tail_ratio.pow(past);
      throw Error(ErrorCode::kLambdaOutOfRange,
                  "lambda_" + std::to_string(idx) + " beyond " + std::to_string(m.values.size()) +
                      " stored values");
    }
    case LambdaFamily::kCustom:
      return m.oracle(idx);
  }
  return Rational(0);
}

Rational LambdaSeq::diff(long n) const { return at(n) - at(n - 1); }

void LambdaSeq::validate(std::size_t n) const {
  if (n == 0) return;
  Rational prev = at(0);
  if (prev.sign() <= 0) throw Error(ErrorCode::kNonPositiveStart, "lambda_0 = " + prev.to_string());
  for (std::size_t i = 1; i < n; ++i) {
    Rational cur = at(static_cast<long>(i));
    if (cur <= prev) {
      throw Error(ErrorCode::kNotStrictlyIncreasing,
                  "lambda_" + std::to_string(i) + " = " + cur.to_string());
    }
    prev = std::move(cur);
  }
}

bool LambdaSeq::reciprocal_summable() const { return impl_->summable; }

std::optional<Rational> LambdaSeq::reciprocal_tail(std::size_t from) const {
  const Impl& m = *impl_;
  if (m.family == LambdaFamily::kGeometric) {
    // sum_{n>=N} 1/(c r^n) = r / ((r - 1) c r^N)
    return m.a / ((m.a - Rational(1)) * at(static_cast<long>(from)));
  }
  if (m.family == LambdaFamily::kExplicit && m.tail == TailRule::kGeometric) {
    const std::size_t stored = m.values.size();
    Rational head;
    std::size_t start = from;
    for (; start < stored; ++start) head += at(static_cast<long>(start)).inverse();
    const Rational& r = m.tail_ratio;
    return head + r / ((r - Rational(1)) * at(static_cast<long>(start)));
  }
  return std::nullopt;
}

}  // namespace fibla
