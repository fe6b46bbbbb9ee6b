#include "gridclass/permutation.hpp"

#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gridclass/errors.hpp"

namespace gridclass {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  std::vector<char> seen(values_.size() + 1, 0);
  for (int v : values_) {
    if (v < 1 || static_cast<std::size_t>(v) > values_.size() || seen[v]) {
      throw InputError("not a permutation of 1.." + std::to_string(values_.size()));
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> values(n);
  std::iota(values.begin(), values.end(), 1);
  return Permutation(std::move(values));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values_[i]);
  }
  return out;
}

std::string Permutation::to_compact_string() const {
  if (values_.size() >= 10) return to_string();
  std::string out;
  for (int v : values_) out += static_cast<char>('0' + v);
  return out;
}

std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
  if (auto c = a.values_.size() <=> b.values_.size(); c != 0) return c;
  return a.values_ <=> b.values_;
}

Permutation parse_permutation(std::string_view text) {
  std::vector<int> values;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InputError(std::string("unexpected character '") + c + "' in permutation", 1, i + 1);
    }
    int value = 0;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > 1'000'000) throw InputError("permutation value too large", 1, start + 1);
      ++i;
    }
    values.push_back(value);
  }
  try {
    return Permutation(std::move(values));
  } catch (const InputError& e) {
    throw InputError(std::string(e.what()) + " in '" + std::string(text) + "'", 1, 1);
  }
}

std::vector<Permutation> parse_permutation_list(std::string_view text) {
  std::vector<Permutation> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";/", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    std::size_t first = item.find_first_not_of(" \t");
    if (first != std::string_view::npos) {
      std::string_view trimmed = item.substr(first, item.find_last_not_of(" \t") - first + 1);
      if (trimmed.find_first_of(" ,\t") != std::string_view::npos) {
        out.push_back(parse_permutation(trimmed));
      } else {
        std::vector<int> values;
        for (std::size_t k = 0; k < trimmed.size(); ++k) {
          char c = trimmed[k];
          if (c < '1' || c > '9') {
            throw InputError(std::string("unexpected character '") + c + "' in permutation list", 1,
                             start + first + k + 1);
          }
          values.push_back(c - '0');
        }
        out.emplace_back(std::move(values));
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

namespace {

bool embed_from(const Permutation& hay, const Permutation& needle, std::vector<std::size_t>& chosen,
                std::size_t next_position) {
  const std::size_t k = chosen.size();
  if (k == needle.size()) return true;
  const std::size_t remaining = needle.size() - k;
  for (std::size_t p = next_position; p + remaining <= hay.size(); ++p) {
    bool ok = true;
    for (std::size_t m = 0; m < k && ok; ++m) {
      ok = (needle[m] < needle[k]) == (hay[chosen[m]] < hay[p]);
    }
    if (!ok) continue;
    chosen.push_back(p);
    if (embed_from(hay, needle, chosen, p + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool contains_pattern(const Permutation& haystack, const Permutation& needle) {
  if (needle.size() > haystack.size()) return false;
  std::vector<std::size_t> chosen;
  chosen.reserve(needle.size());
  return embed_from(haystack, needle, chosen, 0);
}

Permutation delete_point(const Permutation& p, std::size_t index) {
  if (index >= p.size()) throw std::out_of_range("delete_point: index out of range");
  const int removed = p[index];
  std::vector<int> values;
  values.reserve(p.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == index) continue;
    values.push_back(p[i] > removed ? p[i] - 1 : p[i]);
  }
  return Permutation(std::move(values));
}

std::vector<Permutation> all_deletions(const Permutation& p) {
  std::vector<Permutation> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(delete_point(p, i));
  return out;
}

std::vector<Permutation> one_point_extensions(const Permutation& p) {
  const int n = static_cast<int>(p.size());
  std::set<Permutation> out;
  for (int position = 0; position <= n; ++position) {
    for (int value = 1; value <= n + 1; ++value) {
      std::vector<int> values;
      values.reserve(n + 1);
      for (int i = 0; i <= n; ++i) {
        if (i == position) {
          values.push_back(value);
        }
        if (i < n) values.push_back(p[i] >= value ? p[i] + 1 : p[i]);
      }
      out.insert(Permutation(std::move(values)));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<int> values(n);
  std::iota(values.begin(), values.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(values);
  } while (std::next_permutation(values.begin(), values.end()));
  return out;
}

bool is_simple(const Permutation& p) {
  const std::size_t n = p.size();
  for (std::size_t start = 0; start < n; ++start) {
    int lo = p[start];
    int hi = p[start];
    for (std::size_t end = start + 1; end < n; ++end) {
      lo = std::min(lo, p[end]);
      hi = std::max(hi, p[end]);
      const std::size_t length = end - start + 1;
      if (length == n) break;
      if (static_cast<std::size_t>(hi - lo + 1) == length) return false;
    }
  }
  return true;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = p.size() * 0x9e3779b97f4a7c15ULL;
  for (int v : p.values()) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
  return h;
}

}  // namespace gridclass
