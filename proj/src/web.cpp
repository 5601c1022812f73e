#include "weakdiam/web.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace weakdiam {

namespace {
constexpr ElementId kNone = std::numeric_limits<ElementId>::max();
constexpr char kInReach = 1;
constexpr char kInsideU = 2;
}  // namespace

ScaleOutOfRange::ScaleOutOfRange(int s, int lo, int hi)
    : std::runtime_error("scale " + std::to_string(s) + " outside web range [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]"),
      scale(s) {}

CoverFailure::CoverFailure(int s, const std::string& detail)
    : std::runtime_error("cover at scale " + std::to_string(s) + " rejected: " + detail), scale(s) {}

std::size_t Web::scale_slot(int scale) const {
  if (scale < min_scale_ || scale > max_scale_) throw ScaleOutOfRange(scale, min_scale_, max_scale_);
  return static_cast<std::size_t>(scale - min_scale_);
}

std::span<const ElementId> Web::elements_at(std::size_t family, int scale) const {
  if (scale == kSingletonScale) return singletons_.at(family);
  return by_scale_.at(family)[scale_slot(scale)];
}

ElementId Web::singleton(std::size_t family, PointId p) const { return singletons_.at(family).at(p); }

std::optional<ElementId> Web::raw_cell(std::size_t family, int scale, PointId p) const {
  const ElementId id = raw_owner_.at(family)[scale_slot(scale)].at(p);
  if (id == kNone) return std::nullopt;
  return id;
}

double Web::scale_radius(int scale) const {
  return std::pow(2.0 * mesh_constant_ + 1.0, static_cast<double>(scale));
}

struct WebAssembler {
  static Web assemble(std::shared_ptr<const Space> space, double mesh_constant,
                      CoverConstruction construction, std::vector<ScaleCover> covers) {
    if (covers.empty()) throw std::invalid_argument("a web needs at least one scale");
    for (std::size_t i = 1; i < covers.size(); ++i)
      if (covers[i].scale != covers[i - 1].scale + 1)
        throw std::invalid_argument("web scales must be consecutive and ascending");
    const std::size_t families = covers.front().cover.family_count();
    for (const auto& sc : covers)
      if (sc.cover.family_count() != families)
        throw std::invalid_argument("every scale needs the same number of families");

    Web web;
    web.space_ = std::move(space);
    web.mesh_constant_ = mesh_constant;
    web.catch_constant_ = 2.0 * mesh_constant * (2.0 * mesh_constant + 1.0);
    web.min_scale_ = covers.front().scale;
    web.max_scale_ = covers.back().scale;
    web.family_count_ = families;
    web.construction_ = construction;

    const Space& space_ref = *web.space_;
    const std::size_t count = space_ref.size();
    const std::size_t slots = covers.size();

    for (const auto& sc : covers) {
      const CoverReport report = verify_cover(space_ref, sc.cover, web.scale_radius(sc.scale), mesh_constant);
      if (!report.valid()) throw CoverFailure(sc.scale, report.describe());
    }

    web.by_scale_.assign(families, std::vector<std::vector<ElementId>>(slots));
    web.raw_owner_.assign(families, std::vector<std::vector<ElementId>>(slots, std::vector<ElementId>(count, kNone)));
    for (std::size_t slot = 0; slot < slots; ++slot) {
      auto& cover = covers[slot].cover;
      for (std::size_t f = 0; f < families; ++f)
        for (auto& cell : cover.families[f]) {
          const auto id = static_cast<ElementId>(web.elements_.size());
          for (PointId p : cell.members) web.raw_owner_[f][slot][p] = id;
          WebElement e;
          e.family = f;
          e.scale = covers[slot].scale;
          e.lattice = std::move(cell.lattice);
          e.raw = std::move(cell.members);
          web.elements_.push_back(std::move(e));
          web.by_scale_[f][slot].push_back(id);
        }
    }
    const std::size_t cell_elements = web.elements_.size();

    // R bottom-up: elements of one scale depend only on lower scales.
    for (std::size_t slot = 1; slot < slots; ++slot) {
      std::vector<ElementId> layer;
      for (std::size_t f = 0; f < families; ++f)
        layer.insert(layer.end(), web.by_scale_[f][slot].begin(), web.by_scale_[f][slot].end());
      const auto layer_size = static_cast<long>(layer.size());
#pragma omp parallel
      {
        std::vector<char> marked(cell_elements, 0);
        std::vector<ElementId> touched;
#pragma omp for schedule(dynamic, 4)
        for (long li = 0; li < layer_size; ++li) {
          WebElement& u = web.elements_[layer[li]];
          const ElementId uid = layer[li];
          const auto& owner_here = web.raw_owner_[u.family][slot];
          touched.clear();
          for (std::size_t lower = 0; lower < slot; ++lower) {
            const auto& owner_low = web.raw_owner_[u.family][lower];
            for (PointId p : u.raw) {
              const ElementId z = owner_low[p];
              if (z == kNone || marked[z] != 0) continue;
              const WebElement& cand = web.elements_[z];
              const bool inside = std::all_of(cand.raw.begin(), cand.raw.end(),
                                              [&](PointId q) { return owner_here[q] == uid; });
              touched.push_back(z);
              if (inside) {
                marked[z] = kInsideU;
                continue;
              }
              marked[z] = kInReach;
              for (ElementId v : cand.reach)
                if (marked[v] != kInReach) {
                  if (marked[v] == 0) touched.push_back(v);
                  marked[v] = kInReach;
                }
            }
          }
          std::vector<ElementId> reach;
          for (ElementId z : touched) {
            if (marked[z] == kInReach) reach.push_back(z);
            marked[z] = 0;
          }
          std::sort(reach.begin(), reach.end());
          u.reach = std::move(reach);
        }
      }
    }

    // Trim: p survives unless its cell at some lower scale lies in R(U).
    const auto cell_total = static_cast<long>(cell_elements);
#pragma omp parallel for schedule(dynamic, 8)
    for (long id = 0; id < cell_total; ++id) {
      WebElement& u = web.elements_[id];
      if (u.reach.empty()) {
        u.trimmed = u.raw;
      } else {
        const std::size_t slot = static_cast<std::size_t>(u.scale - web.min_scale_);
        std::vector<PointId> keep;
        for (PointId p : u.raw) {
          bool removed = false;
          for (std::size_t lower = 0; lower < slot && !removed; ++lower) {
            const ElementId z = web.raw_owner_[u.family][lower][p];
            removed = z != kNone && std::binary_search(u.reach.begin(), u.reach.end(), z);
          }
          if (!removed) keep.push_back(p);
        }
        u.trimmed = PointSet::from_sorted(std::move(keep));
      }
      u.trimmed_diameter = u.trimmed.empty() ? 0.0 : set_diameter(space_ref, u.trimmed);
    }

    web.singletons_.assign(families, std::vector<ElementId>(count));
    for (std::size_t f = 0; f < families; ++f)
      for (PointId p = 0; p < count; ++p) {
        web.singletons_[f][p] = static_cast<ElementId>(web.elements_.size());
        WebElement e;
        e.family = f;
        e.scale = kSingletonScale;
        e.raw = PointSet::from_sorted({p});
        e.trimmed = e.raw;
        web.elements_.push_back(std::move(e));
      }
    return web;
  }
};

Web build_web(std::shared_ptr<const Space> space, int min_scale, int max_scale, CoverConstruction construction) {
  if (!space) throw std::invalid_argument("build_web needs a space");
  if (min_scale > max_scale) throw std::invalid_argument("build_web needs min_scale <= max_scale");
  const double k = grid_mesh_constant(space->kind(), space->dimension(), construction);
  std::vector<ScaleCover> covers;
  for (int l = min_scale; l <= max_scale; ++l)
    covers.push_back({l, shifted_grid_cover(*space, std::pow(2.0 * k + 1.0, static_cast<double>(l)), construction)});
  return WebAssembler::assemble(std::move(space), k, construction, std::move(covers));
}

Web build_web_from_covers(std::shared_ptr<const Space> space, double mesh_constant, std::vector<ScaleCover> covers) {
  if (!space) throw std::invalid_argument("build_web needs a space");
  if (!(mesh_constant > 1.0)) throw std::invalid_argument("explicit covers must declare K > 1");
  std::sort(covers.begin(), covers.end(), [](const ScaleCover& a, const ScaleCover& b) { return a.scale < b.scale; });
  return WebAssembler::assemble(std::move(space), mesh_constant, CoverConstruction::kDiagonal, std::move(covers));
}

std::vector<ElementId> compute_R(const Web& web, ElementId element) {
  const WebElement& target = web.element(element);
  if (target.is_singleton()) throw std::invalid_argument("R is defined for cover cells only");

  std::map<ElementId, std::vector<ElementId>> memo;
  std::function<const std::vector<ElementId>&(ElementId)> reach = [&](ElementId id) -> const std::vector<ElementId>& {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const WebElement& u = web.element(id);
    std::vector<ElementId> out;
    for (int l = web.min_scale(); l < u.scale; ++l)
      for (ElementId z : web.elements_at(u.family, l)) {
        const WebElement& cand = web.element(z);
        if (!cand.raw.intersects(u.raw) || cand.raw.is_subset_of(u.raw)) continue;
        out.push_back(z);
        const auto& below = reach(z);
        out.insert(out.end(), below.begin(), below.end());
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return memo.emplace(id, std::move(out)).first->second;
  };
  return reach(element);
}

ElementId catch_set(const Web& web, const PointSet& s) {
  if (s.empty()) throw std::invalid_argument("cannot catch an empty set");
  const double d = set_diameter(web.space(), s);
  if (d == 0.0) return web.singleton(0, s.front());
  const int l = scale_index(web.mesh_constant(), d);
  if (l < web.min_scale() || l > web.max_scale()) throw ScaleOutOfRange(l, web.min_scale(), web.max_scale());
  const PointId x = s.front();
  const PointSet needed = ball(web.space(), x, d + half_scale(web.mesh_constant(), l));
  for (std::size_t f = 0; f < web.family_count(); ++f) {
    const auto cell = web.raw_cell(f, l, x);
    if (!cell || !needed.is_subset_of(web.element(*cell).raw)) continue;
    if (!s.is_subset_of(web.element(*cell).trimmed))
      throw std::logic_error("catch: trimming removed part of the padded ball");
    return *cell;
  }
  throw std::logic_error("catch: no cell contains the padded ball; the cover's Lebesgue bound is broken");
}

std::optional<ElementId> catch_in_family(const Web& web, std::size_t family, const PointSet& s,
                                         double catch_constant) {
  if (s.empty()) throw std::invalid_argument("cannot catch an empty set");
  if (s.size() == 1) return web.singleton(family, s.front());
  return catch_in_family(web, family, s, set_diameter(web.space(), s), catch_constant);
}

std::optional<ElementId> catch_in_family(const Web& web, std::size_t family, const PointSet& s, double diameter,
                                         double catch_constant) {
  if (s.empty()) throw std::invalid_argument("cannot catch an empty set");
  if (s.size() == 1) return web.singleton(family, s.front());
  const double budget = catch_constant * diameter;
  const PointId x = s.front();
  for (int l = web.min_scale(); l <= web.max_scale(); ++l) {
    if (!(web.mesh_constant() * web.scale_radius(l) <= budget)) break;
    const auto cell = web.raw_cell(family, l, x);
    if (!cell) continue;
    const WebElement& w = web.element(*cell);
    if (w.trimmed_diameter <= budget && s.is_subset_of(w.trimmed)) return *cell;
  }
  return std::nullopt;
}

std::string LaminarReport::describe(const Web& web) const {
  if (valid()) return "valid";
  const auto& a = web.element(violation->first);
  const auto& b = web.element(violation->second);
  std::ostringstream out;
  out << "elements " << violation->first << " (scale " << a.scale << ") and " << violation->second << " (scale "
      << b.scale << ") overlap without nesting";
  return out.str();
}

LaminarReport verify_laminar(const Web& web, std::size_t family) {
  LaminarReport report;
  const std::size_t count = web.space().size();
  const int lo = web.min_scale(), hi = web.max_scale();
  const auto slots = static_cast<std::size_t>(hi - lo + 1);

  // Trimmed owner per scale; a second owner is already a violation.
  std::vector<std::vector<ElementId>> owner(slots, std::vector<ElementId>(count, kNone));
  for (std::size_t slot = 0; slot < slots; ++slot)
    for (ElementId id : web.elements_at(family, lo + static_cast<int>(slot)))
      for (PointId p : web.element(id).trimmed) {
        if (owner[slot][p] != kNone) {
          report.violation = std::make_pair(owner[slot][p], id);
          return report;
        }
        owner[slot][p] = id;
      }

  // Singletons meet any set in nothing or themselves, so they never violate.
  // For cells A below B: A meets B only through B's ownership of A's points.
  std::vector<ElementId> lower_all;
  for (std::size_t slot = 0; slot < slots; ++slot)
    for (ElementId id : web.elements_at(family, lo + static_cast<int>(slot)))
      if (!web.element(id).trimmed.empty()) lower_all.push_back(id);

  std::vector<std::optional<std::pair<ElementId, ElementId>>> found(lower_all.size());
  const auto total = static_cast<long>(lower_all.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < total; ++i) {
    const ElementId a_id = lower_all[i];
    const WebElement& a = web.element(a_id);
    const auto a_slot = static_cast<std::size_t>(a.scale - lo);
    for (std::size_t b_slot = a_slot + 1; b_slot < slots && !found[i]; ++b_slot) {
      std::vector<ElementId> owners;
      bool uncovered = false;
      for (PointId p : a.trimmed) {
        const ElementId b = owner[b_slot][p];
        if (b == kNone) uncovered = true;
        else if (std::find(owners.begin(), owners.end(), b) == owners.end()) owners.push_back(b);
      }
      if (owners.empty() || (owners.size() == 1 && !uncovered)) continue;  // disjoint, or A inside B
      std::sort(owners.begin(), owners.end());
      for (ElementId b_id : owners) {
        const auto& b_points = web.element(b_id).trimmed;
        const bool b_inside_a =
            std::all_of(b_points.begin(), b_points.end(), [&](PointId q) { return owner[a_slot][q] == a_id; });
        if (!b_inside_a) {
          found[i] = std::make_pair(a_id, b_id);
          break;
        }
      }
    }
  }
  for (const auto& f : found)
    if (f) {
      report.violation = f;
      break;
    }
  return report;
}

std::string dump_web(const Web& web) {
  std::ostringstream out;
  out << "# web K=" << web.mesh_constant() << " C=" << web.catch_constant() << " scales=[" << web.min_scale()
      << "," << web.max_scale() << "] families=" << web.family_count() << " construction="
      << to_string(web.construction()) << "\n";
  out << "# id family scale lattice raw trimmed reach\n";
  for (ElementId id = 0; id < web.size(); ++id) {
    const auto& e = web.element(id);
    if (e.is_singleton()) continue;
    out << id << ' ' << e.family << ' ' << e.scale << " (";
    for (std::size_t j = 0; j < e.lattice.size(); ++j) out << (j ? "," : "") << e.lattice[j];
    out << ") " << e.raw.size() << ' ' << e.trimmed.size() << ' ' << e.reach.size() << '\n';
  }
  out << "# singleton level: " << web.space().size() << " element(s) per family\n";
  return out.str();
}

}  // namespace weakdiam
