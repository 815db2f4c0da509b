#include "khcable/cable.hpp"

#include <numeric>
#include <stdexcept>

namespace khc {

namespace {

int append_kinks(int count, int in, int& next_id, std::vector<Crossing>& out) {
  int cur = in;
  for (int k = 0; k < std::abs(count); ++k) {
    int loop = next_id++, exit = next_id++;
    Crossing c;
    if (count > 0) {
      c.edges = {cur, exit, loop, loop};
      c.over_in = 3;
    } else {
      c.edges = {cur, loop, loop, exit};
      c.over_in = 1;
    }
    c.under_in = 0;
    out.push_back(c);
    cur = exit;
  }
  return cur;
}

}  // namespace

void CableSpec::validate() const {
  if (m < 0 || a < 0 || a > 2 * m || i < 0 || i > 2 * m)
    throw std::invalid_argument("cable parameters need m >= 0 and 0 <= a, i <= 2m");
}

Cable cable_insert_detailed(const LinkDiagram& knot, int f, const BraidWord& pattern) {
  pattern.validate();
  if (knot.component_count() != 1)
    throw std::invalid_argument("cabling needs a one-component diagram, got " +
                                std::to_string(knot.component_count()) + " components");
  const int N = pattern.strands;
  Cable out;
  out.strands = N;

  if (knot.crossing_count() == 0) {
    if (N > 1) {
      Closure cl = braid_closure_detailed(full_twists(N, f) * pattern);
      out.diagram = std::move(cl.diagram);
      out.strand_component = std::move(cl.strand_component);
      out.pattern_start = out.diagram.crossing_count() - pattern.length();
      return out;
    }
    if (f == 0) {
      out.diagram = LinkDiagram::unknot();
    } else {
      std::vector<Crossing> xs;
      int next_id = 1;
      int last = append_kinks(f, 0, next_id, xs);
      out.diagram = assemble(std::move(xs), {{0, last}});
    }
    out.strand_component = {0};
    out.pattern_start = out.diagram.crossing_count();
    return out;
  }

  const int E = knot.edge_count();
  const int e0 = 0;
  // copy j of an edge counts left to right across its direction of travel
  auto stub = [&](int c, int s, int j) {
    int e = knot.crossing(c).edges[s];
    if (e == e0 && knot.head(e0) == Slot{c, s}) return E * N + j;
    return e * N + j;
  };
  int next_id = E * N + N;
  std::vector<Crossing> xs;

  for (int c = 0; c < knot.crossing_count(); ++c) {
    const Crossing& x = knot.crossing(c);
    const int u = x.under_in;
    const int south = u, north = (u + 2) % 4;
    const bool positive = x.sign() > 0;
    const int over_in = x.over_in, over_out = (x.over_in + 2) % 4;
    // rows from south to north; an eastbound over strand has copy 0 northmost
    std::vector<int> row_copy(N);
    for (int r = 0; r < N; ++r) row_copy[r] = positive ? N - 1 - r : r;
    std::vector<std::vector<int>> vert(N, std::vector<int>(N + 1)), hor(N, std::vector<int>(N + 1));
    for (int j = 0; j < N; ++j) {
      vert[j][0] = stub(c, south, j);
      vert[j][N] = stub(c, north, j);
      for (int r = 1; r < N; ++r) vert[j][r] = next_id++;
      hor[j][0] = stub(c, over_in, j);
      hor[j][N] = stub(c, over_out, j);
      for (int t = 1; t < N; ++t) hor[j][t] = next_id++;
    }
    for (int r = 0; r < N; ++r) {
      const int k = row_copy[r];
      for (int j = 0; j < N; ++j) {
        const int t = positive ? j : N - 1 - j;
        Crossing g;
        g.under_in = 0;
        g.edges[0] = vert[j][r];
        g.edges[2] = vert[j][r + 1];
        if (positive) {
          g.edges[3] = hor[k][t];
          g.edges[1] = hor[k][t + 1];
          g.over_in = 3;
        } else {
          g.edges[1] = hor[k][t];
          g.edges[3] = hor[k][t + 1];
          g.over_in = 1;
        }
        xs.push_back(g);
      }
    }
  }

  const int correction = f - knot.writhe();
  std::vector<std::pair<int, int>> identify;
  std::vector<int> in(N);
  // braid position p carries copy N-1-p: strands run south with their left side east
  for (int p = 0; p < N; ++p) in[p] = e0 * N + (N - 1 - p);
  if (N == 1) {
    int last = append_kinks(correction, in[0], next_id, xs);
    out.pattern_start = static_cast<int>(xs.size());
    identify.emplace_back(last, E * N);
  } else {
    std::vector<int> mid = append_braid(full_twists(N, correction), in, next_id, xs);
    out.pattern_start = static_cast<int>(xs.size());
    std::vector<int> bottom = append_braid(pattern, mid, next_id, xs);
    for (int p = 0; p < N; ++p) identify.emplace_back(bottom[p], E * N + (N - 1 - p));
  }
  std::vector<int> renumber;
  out.diagram = assemble(std::move(xs), identify, {}, &renumber);
  for (int p = 0; p < N; ++p) out.strand_component.push_back(out.diagram.component_of_edge(renumber[in[p]]));
  return out;
}

LinkDiagram cable_insert(const LinkDiagram& knot, int f, const BraidWord& pattern) {
  return cable_insert_detailed(knot, f, pattern).diagram;
}

Cable auxiliary_cable(const LinkDiagram& knot, const CableSpec& spec) {
  spec.validate();
  return cable_insert_detailed(knot, spec.f, d_braid(spec.m, spec.a, spec.i, spec.flipped));
}

Cable parallel_cable(const LinkDiagram& knot, int n, int f) {
  Cable c = cable_insert_detailed(knot, f, BraidWord{2 * n + 1, {}});
  std::set<int> odd;
  for (int p = 1; p < 2 * n + 1; p += 2) odd.insert(p);
  c.diagram = c.diagram.oriented(reverse_strands(c, odd));
  return c;
}

OrientationAssignment reverse_strands(const Cable& cable, const std::set<int>& positions) {
  OrientationAssignment o;
  std::set<int> comps;
  for (int p : positions) comps.insert(cable.strand_component.at(p));
  for (int p = 0; p < cable.strands; ++p)
    if (comps.count(cable.strand_component[p]) && !positions.count(p))
      throw std::invalid_argument("strand set does not close up to a sublink");
  o.flips = comps;
  return o;
}

}  // namespace khc
