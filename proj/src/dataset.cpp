#include "frontier/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

namespace frontier {

namespace {

constexpr double kCorrelationSlack = 1e-9;
constexpr double kFrontierSlack = 1e-15;

/// Whitespace tokenizer that remembers the 1-based line of each token for diagnostics.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::size_t pos = 0;
      while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
        if (end > pos) tokens_.push_back({line.substr(pos, end - pos), line_no});
        pos = end;
      }
    }
  }

  bool done() const { return next_ >= tokens_.size(); }
  std::size_t remaining() const { return tokens_.size() - next_; }

  double next_double(const char* what) {
    const Token& tok = take(what);
    double value = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      fail(tok, std::string("malformed number for ") + what);
    }
    return value;
  }

  long long next_integer(const char* what) {
    const Token& tok = take(what);
    long long value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail(tok, std::string("malformed integer for ") + what);
    return value;
  }

  [[noreturn]] void fail_last(const std::string& message) const { fail(tokens_[next_ - 1], message); }

 private:
  struct Token {
    std::string text;
    std::size_t line;
  };

  const Token& take(const char* what) {
    if (done()) throw DatasetError(std::string("unexpected end of input, expected ") + what);
    return tokens_[next_++];
  }

  [[noreturn]] static void fail(const Token& tok, const std::string& message) {
    throw DatasetError("line " + std::to_string(tok.line) + ": " + message + " ('" + tok.text + "')");
  }

  std::vector<Token> tokens_;
  std::size_t next_ = 0;
};

void write_double(std::ostream& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.write(buf, ptr - buf);
}

}  // namespace

SquareMatrix build_covariance(const std::vector<double>& std_devs, const SquareMatrix& correlations) {
  const std::size_t n = std_devs.size();
  if (correlations.size() != n) {
    throw DatasetError("correlation matrix is " + std::to_string(correlations.size()) +
                       "x" + std::to_string(correlations.size()) + " but there are " +
                       std::to_string(n) + " standard deviations");
  }
  SquareMatrix cov(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(correlations(i, i) - 1.0) > kCorrelationSlack) {
      throw DatasetError("self-correlation of asset " + std::to_string(i + 1) + " is not 1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double rho = correlations(i, j);
      if (!(std::abs(rho) <= 1.0 + kCorrelationSlack)) {
        throw DatasetError("correlation between assets " + std::to_string(i + 1) + " and " +
                           std::to_string(j + 1) + " exceeds 1 in magnitude");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Diagonal from s_i * s_i directly so sigma_ii == s_i^2 bit-exactly.
    cov(i, i) = std_devs[i] * std_devs[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double value = correlations(i, j) * std_devs[i] * std_devs[j];
      cov(i, j) = value;
      cov(j, i) = value;
    }
  }
  return cov;
}

AssetUniverse::AssetUniverse(std::vector<double> mean_returns, std::vector<double> std_devs,
                             SquareMatrix correlations)
    : mean_returns_(std::move(mean_returns)),
      std_devs_(std::move(std_devs)),
      correlations_(std::move(correlations)) {
  if (mean_returns_.empty()) throw DatasetError("asset universe must contain at least one asset");
  if (std_devs_.size() != mean_returns_.size()) {
    throw DatasetError("mean return and standard deviation counts differ");
  }
  for (std::size_t i = 0; i < std_devs_.size(); ++i) {
    if (!(std_devs_[i] >= 0.0)) {
      throw DatasetError("negative standard deviation for asset " + std::to_string(i + 1));
    }
  }
  for (std::size_t i = 0; i < correlations_.size(); ++i) {
    for (std::size_t j = i + 1; j < correlations_.size(); ++j) {
      if (correlations_(i, j) != correlations_(j, i)) {
        throw DatasetError("correlation matrix is not symmetric");
      }
    }
  }
  covariance_ = build_covariance(std_devs_, correlations_);
}

Uef::Uef(std::vector<std::pair<double, double>> return_variance) {
  if (return_variance.empty()) throw DatasetError("efficient frontier has no points");
  std::stable_sort(return_variance.begin(), return_variance.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  points_.reserve(return_variance.size());
  for (const auto& [ret, var] : return_variance) {
    if (!std::isfinite(ret) || !std::isfinite(var)) throw DatasetError("non-finite frontier value");
    if (var < 0.0) throw DatasetError("negative variance on efficient frontier");
    if (!points_.empty() && var < points_.back().variance - kFrontierSlack) {
      throw DatasetError("efficient frontier variance decreases as return increases");
    }
    points_.push_back({ret, var, std::sqrt(var)});
  }
}

AssetUniverse parse_universe(std::istream& in) {
  TokenReader reader(in);
  if (reader.done()) throw DatasetError("empty asset file");
  const long long n = reader.next_integer("asset count");
  if (n <= 0) reader.fail_last("asset count must be positive");

  const auto count = static_cast<std::size_t>(n);
  std::vector<double> means(count);
  std::vector<double> sds(count);
  for (std::size_t i = 0; i < count; ++i) {
    means[i] = reader.next_double("mean return");
    sds[i] = reader.next_double("standard deviation");
  }

  SquareMatrix rho(count, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < count; ++i) rho(i, i) = 1.0;
  std::vector<char> seen(count * count, 0);
  std::size_t distinct_pairs = 0;

  while (!reader.done()) {
    if (reader.remaining() < 3) {
      reader.next_integer("asset index");
      reader.fail_last("truncated correlation line");
    }
    const long long i = reader.next_integer("asset index i");
    if (i < 1 || i > n) reader.fail_last("asset index out of range");
    const long long j = reader.next_integer("asset index j");
    if (j < 1 || j > n) reader.fail_last("asset index out of range");
    const double value = reader.next_double("correlation");

    const auto a = static_cast<std::size_t>(std::min(i, j) - 1);
    const auto b = static_cast<std::size_t>(std::max(i, j) - 1);
    if (a == b) {
      if (std::abs(value - 1.0) > kCorrelationSlack) reader.fail_last("self-correlation must be 1");
      continue;
    }
    if (std::abs(value) > 1.0 + kCorrelationSlack) reader.fail_last("correlation magnitude above 1");
    char& flag = seen[a * count + b];
    if (flag) {
      if (rho(a, b) != value) reader.fail_last("conflicting duplicate correlation entry");
      continue;
    }
    flag = 1;
    ++distinct_pairs;
    rho(a, b) = value;
    rho(b, a) = value;
  }

  const std::size_t expected = count * (count - 1) / 2;
  if (distinct_pairs != expected) {
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = a + 1; b < count; ++b) {
        if (!seen[a * count + b]) {
          throw DatasetError("missing correlation for assets " + std::to_string(a + 1) + " and " +
                             std::to_string(b + 1) + " (" + std::to_string(distinct_pairs) + " of " +
                             std::to_string(expected) + " pairs present)");
        }
      }
    }
  }
  return AssetUniverse(std::move(means), std::move(sds), std::move(rho));
}

Uef load_uef(std::istream& in) {
  TokenReader reader(in);
  if (reader.done()) throw DatasetError("empty frontier file");
  std::vector<std::pair<double, double>> pairs;
  while (!reader.done()) {
    if (reader.remaining() < 2) {
      reader.next_double("mean return");
      reader.fail_last("frontier line is missing its variance");
    }
    const double ret = reader.next_double("mean return");
    const double var = reader.next_double("variance");
    if (var < 0.0) reader.fail_last("negative variance");
    pairs.emplace_back(ret, var);
  }
  return Uef(std::move(pairs));
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  return in;
}

}  // namespace

AssetUniverse load_universe_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  try {
    return parse_universe(in);
  } catch (const DatasetError& e) {
    throw DatasetError(path.string() + ": " + e.what());
  }
}

Uef load_uef_file(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  try {
    return load_uef(in);
  } catch (const DatasetError& e) {
    throw DatasetError(path.string() + ": " + e.what());
  }
}

void write_universe(std::ostream& out, const AssetUniverse& universe) {
  const std::size_t n = universe.size();
  out << ' ' << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << ' ';
    write_double(out, universe.mean_return(i));
    out << ' ';
    write_double(out, universe.std_devs()[i]);
    out << '\n';
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      out << ' ' << i + 1 << ' ' << j + 1 << ' ';
      write_double(out, universe.correlations()(i, j));
      out << '\n';
    }
  }
}

void write_uef(std::ostream& out, const Uef& uef) {
  for (const auto& p : uef.points()) {
    out << ' ';
    write_double(out, p.mean_return);
    out << ' ';
    write_double(out, p.variance);
    out << '\n';
  }
}

}  // namespace frontier
