#include "khcable/braid.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace khc {

void BraidWord::validate() const {
  if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
  for (int l : letters)
    if (l == 0 || std::abs(l) >= strands)
      throw std::invalid_argument("braid letter " + std::to_string(l) + " out of range for " +
                                  std::to_string(strands) + " strands");
}

std::vector<int> BraidWord::permutation() const {
  // at_pos[q] = top position of the strand currently at position q
  std::vector<int> at_pos(strands);
  std::iota(at_pos.begin(), at_pos.end(), 0);
  for (int l : letters) std::swap(at_pos[std::abs(l) - 1], at_pos[std::abs(l)]);
  std::vector<int> perm(strands);
  for (int q = 0; q < strands; ++q) perm[at_pos[q]] = q;
  return perm;
}

std::vector<std::vector<int>> BraidWord::orbits() const {
  std::vector<int> perm = permutation();
  std::vector<bool> seen(strands, false);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < strands; ++p) {
    if (seen[p]) continue;
    std::vector<int> cyc;
    for (int q = p; !seen[q]; q = perm[q]) {
      seen[q] = true;
      cyc.push_back(q);
    }
    out.push_back(cyc);
  }
  return out;
}

BraidWord BraidWord::operator*(const BraidWord& rhs) const {
  if (strands != rhs.strands) throw std::invalid_argument("braid strand counts differ");
  BraidWord r = *this;
  r.letters.insert(r.letters.end(), rhs.letters.begin(), rhs.letters.end());
  return r;
}

BraidWord BraidWord::power(int k) const {
  if (k < 0) throw std::invalid_argument("negative braid power");
  BraidWord r{strands, {}};
  for (int j = 0; j < k; ++j) r = r * *this;
  return r;
}

BraidWord d_braid(int m, int a, int i, bool flipped) {
  if (m < 0 || a < 0 || a > 2 * m || i < 0 || i > 2 * m)
    throw std::invalid_argument("d_braid needs m >= 0 and 0 <= a, i <= 2m");
  BraidWord cycle{2 * m + 1, {}};
  for (int k = 1; k <= 2 * m; ++k) cycle.letters.push_back(k);
  BraidWord head{2 * m + 1, {}};
  if (flipped) {
    for (int k = 2 * m + 1 - i; k <= 2 * m; ++k) head.letters.push_back(k);
    return head * cycle.power(a);
  }
  for (int k = 1; k <= i; ++k) head.letters.push_back(k);
  return cycle.power(a) * head;
}

BraidWord full_twists(int strands, int count) {
  BraidWord r{strands, {}};
  for (int t = 0; t < std::abs(count); ++t)
    for (int rep = 0; rep < strands; ++rep)
      for (int k = 1; k < strands; ++k) r.letters.push_back(count > 0 ? k : -k);
  return r;
}

int count_inter_crossings(const BraidWord& b, const std::set<int>& J) {
  b.validate();
  for (int j : J)
    if (j < 0 || j >= b.strands) throw std::invalid_argument("strand index out of range");
  std::vector<int> perm = b.permutation();
  for (int j : J)
    if (!J.count(perm[j])) throw std::invalid_argument("strand set is not a union of closure components");
  std::vector<int> at_pos(b.strands);
  std::iota(at_pos.begin(), at_pos.end(), 0);
  int count = 0;
  for (int l : b.letters) {
    int p = std::abs(l) - 1;
    if (J.count(at_pos[p]) != J.count(at_pos[p + 1])) ++count;
    std::swap(at_pos[p], at_pos[p + 1]);
  }
  return count;
}

std::vector<int> append_braid(const BraidWord& b, const std::vector<int>& in, int& next_id,
                              std::vector<Crossing>& out) {
  std::vector<int> cur = in;
  for (int l : b.letters) {
    int p = std::abs(l) - 1;
    int left_out = next_id++, right_out = next_id++;
    Crossing c;
    if (l > 0) {
      c.edges = {cur[p], left_out, right_out, cur[p + 1]};
      c.under_in = 0;
      c.over_in = 3;
    } else {
      c.edges = {cur[p + 1], cur[p], left_out, right_out};
      c.under_in = 0;
      c.over_in = 1;
    }
    out.push_back(c);
    cur[p] = left_out;
    cur[p + 1] = right_out;
  }
  return cur;
}

Closure braid_closure_detailed(const BraidWord& b) {
  b.validate();
  std::vector<int> top(b.strands);
  std::iota(top.begin(), top.end(), 0);
  int next_id = b.strands;
  std::vector<Crossing> xs;
  std::vector<int> bottom = append_braid(b, top, next_id, xs);
  std::vector<std::pair<int, int>> identify;
  for (int p = 0; p < b.strands; ++p) identify.emplace_back(top[p], bottom[p]);
  std::vector<bool> touched(b.strands, false);
  for (int l : b.letters) touched[std::abs(l) - 1] = touched[std::abs(l)] = true;
  int loops = 0;
  for (int p = 0; p < b.strands; ++p) loops += !touched[p];
  std::vector<int> renumber;
  Closure out{assemble(std::move(xs), identify, std::vector<bool>(loops, false), &renumber), {}};
  int loop = 0;
  for (int p = 0; p < b.strands; ++p)
    out.strand_component.push_back(touched[p] ? out.diagram.component_of_edge(renumber[p])
                                              : out.diagram.component_of_free_loop(loop++));
  return out;
}

LinkDiagram braid_closure(const BraidWord& b) { return braid_closure_detailed(b).diagram; }

BraidWord parse_braid(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("braid text needs 'strands: letters'");
  BraidWord b;
  try {
    b.strands = std::stoi(text.substr(0, colon));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad strand count in '" + text + "'");
  }
  std::istringstream is(text.substr(colon + 1));
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad braid letter '" + tok + "'");
    b.letters.push_back(v);
  }
  b.validate();
  return b;
}

std::string format_braid(const BraidWord& b) {
  std::ostringstream os;
  os << b.strands << ":";
  for (int l : b.letters) os << " " << l;
  return os.str();
}

}  // namespace khc
