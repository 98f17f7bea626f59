#include "circrank/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "circrank/error.hpp"

namespace circrank {

bool ConnectionSet::contains(int r) const {
  if (n_ < 1) return false;
  const int m = ((r % n_) + n_) % n_;
  return std::binary_search(residues_.begin(), residues_.end(), m);
}

CirculantGraph CirculantGraph::make(int n, std::span<const int> raw) {
  if (n < 1) throw Error(ErrorKind::InvalidOrder, "vertex count must be >= 1, got " + std::to_string(n));
  std::set<int> given;
  for (int r : raw) {
    const int m = ((r % n) + n) % n;
    if (m == 0) throw Error(ErrorKind::InvalidLoop, "residue " + std::to_string(r) + " is 0 mod " + std::to_string(n));
    given.insert(m);
  }
  std::set<int> closed = given;
  for (int r : given) closed.insert(n - r);

  CirculantGraph g;
  g.connection_.n_ = n;
  g.connection_.residues_.assign(closed.begin(), closed.end());
  for (int r : closed)
    if (!given.contains(r)) g.connection_.added_.push_back(r);
  return g;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int integer() {
    skip_ws();
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    int value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) fail("expected integer");
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
  }
};

}  // namespace

CirculantGraph CirculantGraph::parse(std::string_view text) {
  Cursor c{text};
  c.expect('C');
  c.expect('(');
  const int n = c.integer();
  c.expect(',');
  c.expect('{');
  std::vector<int> raw;
  if (!c.accept('}')) {
    do {
      raw.push_back(c.integer());
    } while (c.accept(','));
    c.expect('}');
  }
  c.expect(')');
  c.skip_ws();
  if (c.pos != text.size()) c.fail("trailing characters");
  return make(n, raw);
}

bool CirculantGraph::adjacent(int i, int j) const {
  if (i == j) return false;
  return connection_.contains(i - j);
}

std::string CirculantGraph::to_string() const {
  std::ostringstream os;
  os << "C(" << n() << ",{";
  for (std::size_t i = 0; i < residues().size(); ++i) {
    if (i) os << ',';
    os << residues()[i];
  }
  os << "})";
  return os.str();
}

std::optional<int> is_consecutive(const CirculantGraph& g) {
  const auto& s = g.connection();
  if (s.size() == 0) return std::nullopt;
  const int n = g.n();
  int k = 0;
  while (k + 1 <= n / 2 && s.contains(k + 1)) ++k;
  if (k == 0) return std::nullopt;
  const std::size_t expected = static_cast<std::size_t>(std::min(2 * k, n - 1));
  if (s.size() != expected) return std::nullopt;
  return k;
}

int zero_forcing_consecutive(const CirculantGraph& g) {
  if (!is_consecutive(g))
    throw Error(ErrorKind::UnsupportedFamily, g.to_string() + " is not a consecutive circulant");
  return g.degree();
}

int mr_lower_bound(const CirculantGraph& g) { return g.n() - zero_forcing_consecutive(g); }

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<CirculantGraph> all_circulants(int n) {
  // One generator per conjugate pair {j, n−j}, j = 1..⌊n/2⌋.
  const int pairs = n / 2;
  std::vector<CirculantGraph> out;
  out.reserve(std::size_t{1} << pairs);
  for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
    std::vector<int> raw;
    for (int j = 1; j <= pairs; ++j)
      if (mask & (1u << (j - 1))) raw.push_back(j);
    out.push_back(CirculantGraph::make(n, raw));
  }
  return out;
}

std::vector<CirculantGraph> consecutive_circulants(int n) {
  std::vector<CirculantGraph> out;
  std::vector<int> raw;
  for (int k = 1; k <= n / 2; ++k) {
    raw.push_back(k);
    out.push_back(CirculantGraph::make(n, raw));
  }
  return out;
}

}  // namespace circrank
