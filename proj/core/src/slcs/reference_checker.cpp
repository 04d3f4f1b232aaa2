#include "voxql/slcs/reference_checker.hpp"

#include <string>
#include <vector>

#include "voxql/error.hpp"

namespace voxql::slcs {

namespace {

using Truth = std::vector<bool>;
using Matrix = std::vector<std::vector<bool>>;

struct Oracle {
  const ClosureModel& model;
  std::size_t n;
  Matrix step;  // step[a][b]: b lies in C({a})

  explicit Oracle(const ClosureModel& m) : model(m), n(m.size()), step(n, std::vector<bool>(n, false)) {
    const spatial::Relation rel = m.space().relation();
    for (std::size_t a = 0; a < n; ++a)
      for (auto b : rel.neighbors(a)) step[a][b] = true;
  }

  // within[a][b]: a path a = p0, ..., pk = b (k >= 0) exists whose every
  // point lies in corridor. Floyd-Warshall style closure.
  Matrix corridor_paths(const Truth& corridor) const {
    Matrix within(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
      if (!corridor[a]) continue;
      within[a][a] = true;
      for (std::size_t b = 0; b < n; ++b)
        if (step[a][b] && corridor[b]) within[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        if (within[a][k])
          for (std::size_t b = 0; b < n; ++b)
            if (within[k][b]) within[a][b] = true;
    return within;
  }

  // s, s1, ..., sn with sn in goal, s1..s(n-1) in corridor, n >= 0.
  Truth forward(const Truth& goal, const Truth& corridor) const {
    const Matrix within = corridor_paths(corridor);
    Truth out(n, false);
    for (std::size_t s = 0; s < n; ++s) {
      if (goal[s]) {  // n = 0
        out[s] = true;
        continue;
      }
      for (std::size_t s1 = 0; s1 < n && !out[s]; ++s1) {
        if (!step[s][s1]) continue;
        if (goal[s1]) {  // n = 1
          out[s] = true;
          break;
        }
        // n >= 2: s1 .. s(n-1) is a corridor path ending next to the goal.
        for (std::size_t last = 0; last < n && !out[s]; ++last) {
          if (!within[s1][last]) continue;
          for (std::size_t sn = 0; sn < n; ++sn)
            if (step[last][sn] && goal[sn]) {
              out[s] = true;
              break;
            }
        }
      }
    }
    return out;
  }

  // s0, ..., s(n-1), s with s0 in goal, s1..s(n-1) in corridor, n >= 0.
  Truth backward(const Truth& goal, const Truth& corridor) const {
    const Matrix within = corridor_paths(corridor);
    Truth out(n, false);
    for (std::size_t s = 0; s < n; ++s) {
      if (goal[s]) {
        out[s] = true;
        continue;
      }
      for (std::size_t prev = 0; prev < n && !out[s]; ++prev) {
        if (!step[prev][s]) continue;
        if (goal[prev]) {
          out[s] = true;
          break;
        }
        for (std::size_t first = 0; first < n && !out[s]; ++first) {
          if (!within[first][prev]) continue;
          for (std::size_t s0 = 0; s0 < n; ++s0)
            if (step[s0][first] && goal[s0]) {
              out[s] = true;
              break;
            }
        }
      }
    }
    return out;
  }

  Truth eval(const Formula& f) const {
    switch (f.kind()) {
      case FormulaKind::True:
        return Truth(n, true);
      case FormulaKind::Atom: {
        const PointSet& points = model.atom(f.atom_name());
        Truth out(n, false);
        for (std::size_t s = 0; s < n; ++s) out[s] = points.contains(s);
        return out;
      }
      case FormulaKind::Not: {
        Truth out = eval(f.operand(0));
        for (std::size_t s = 0; s < n; ++s) out[s] = !out[s];
        return out;
      }
      case FormulaKind::And: {
        const Truth a = eval(f.operand(0));
        const Truth b = eval(f.operand(1));
        Truth out(n, false);
        for (std::size_t s = 0; s < n; ++s) out[s] = a[s] && b[s];
        return out;
      }
      case FormulaKind::ForwardReach:
        return forward(eval(f.operand(0)), eval(f.operand(1)));
      case FormulaKind::BackwardReach:
        return backward(eval(f.operand(0)), eval(f.operand(1)));
      case FormulaKind::Near: {
        // s is in C(A) iff s in R(a) for some a in A.
        const Truth a = eval(f.operand(0));
        Truth out(n, false);
        for (std::size_t s = 0; s < n; ++s)
          for (std::size_t y = 0; y < n; ++y)
            if (a[y] && step[y][s]) {
              out[s] = true;
              break;
            }
        return out;
      }
    }
    return Truth(n, false);
  }
};

}  // namespace

PointSet brute_force_check(const ClosureModel& model, const Formula& f, std::size_t max_points) {
  if (model.size() > max_points)
    throw InvalidInput("brute-force checker limited to " + std::to_string(max_points) + " points, model has " +
                       std::to_string(model.size()));
  const Truth truth = Oracle(model).eval(f);
  PointSet out(model.size());
  for (std::size_t s = 0; s < truth.size(); ++s)
    if (truth[s]) out.insert(s);
  return out;
}

}  // namespace voxql::slcs
