#include "smlearn/obstable.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace smlearn {

namespace {

struct CellsHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h = h * 1000003u ^ x;
    return h;
  }
};

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word append(const Word& a, const Char& c) {
  Word w = a;
  w.push_back(c);
  return w;
}

// Strict (w1, w2, a) order for consistency witnesses.
bool witness_less(const Defect& x, const Defect& y) {
  if (x.w1 != y.w1) return shortlex_less(x.w1, y.w1);
  if (x.w2 != y.w2) return shortlex_less(x.w2, y.w2);
  return x.a < y.a;
}

}  // namespace

const char* defect_name(DefectKind k) {
  switch (k) {
    case DefectKind::Cohesive: return "cohesive";
    case DefectKind::NotClosed: return "not closed";
    case DefectKind::NotConsistent: return "not consistent";
    case DefectKind::NotEvidenceClosed: return "not evidence-closed";
    case DefectKind::NotOutputClosed: return "not output-closed";
  }
  return "";
}

ObservationTable::ObservationTable(AlgebraPtr alg, const Char& a0, OutputChannel& oracle)
    : alg_(std::move(alg)), oracle_(&oracle) {
  alg_->check(a0);
  rows_.push_back({Word{}, true, {}});
  index_.emplace(Word{}, 0);
  s_order_.push_back(0);
  add_column(Word{a0}, true);
  sigma_.push_back(a0);
  add_row(Word{a0});
}

std::vector<Word> ObservationTable::S() const {
  std::vector<Word> out;
  for (auto i : s_order_) out.push_back(rows_[i].w);
  return out;
}

std::vector<Word> ObservationTable::R() const {
  std::vector<Word> out;
  for (auto i : r_order_) out.push_back(rows_[i].w);
  return out;
}

std::vector<Word> ObservationTable::columns() const {
  std::vector<Word> out;
  for (const auto& a : sigma_) out.push_back(Word{a});
  for (const auto& e : E_) out.push_back(e);
  return out;
}

bool ObservationTable::in_S(const Word& w) const {
  auto it = index_.find(w);
  return it != index_.end() && rows_[it->second].in_s;
}

const ObservationTable::Row& ObservationTable::row(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw TableError("no row " + alg_->format(w));
  return rows_[it->second];
}

std::size_t ObservationTable::column_index(const Word& e) const {
  for (std::size_t i = 0; i < cols_.size(); ++i)
    if (cols_[i].e == e) return i;
  throw TableError("no column " + alg_->format(e));
}

const std::string& ObservationTable::f(const Word& w, const Word& e) const {
  return gamma_[row(w).cells[column_index(e)]];
}

std::size_t ObservationTable::row_id(const Word& w) const {
  return row_classes()[index_.at(w)];
}

std::vector<std::size_t> ObservationTable::row_ids(const std::vector<Word>& ws) const {
  auto cls = row_classes();
  std::vector<std::size_t> out;
  for (const auto& w : ws) {
    auto it = index_.find(w);
    if (it == index_.end()) throw TableError("no row " + alg_->format(w));
    out.push_back(cls[it->second]);
  }
  return out;
}

std::uint32_t ObservationTable::query(const Word& w) {
  auto it = cache_.find(w);
  if (it != cache_.end()) {
    ++repeats_;
    return it->second;
  }
  std::string o = oracle_->output_query(w);
  auto g = std::find(gamma_.begin(), gamma_.end(), o);
  if (g == gamma_.end()) {
    gamma_.push_back(o);
    g = gamma_.end() - 1;
  }
  auto id = static_cast<std::uint32_t>(g - gamma_.begin());
  cache_.emplace(w, id);
  return id;
}

void ObservationTable::add_row(const Word& w) {
  for (const auto& c : w) alg_->check(c);
  Row r{w, false, {}};
  r.cells.reserve(cols_.size());
  for (const auto& col : cols_) r.cells.push_back(query(concat(w, col.e)));
  index_.emplace(w, rows_.size());
  r_order_.push_back(rows_.size());
  rows_.push_back(std::move(r));
}

void ObservationTable::add_column(const Word& e, bool is_char) {
  cols_.push_back({e, is_char});
  for (auto& r : rows_) r.cells.push_back(query(concat(r.w, e)));
}

std::vector<std::size_t> ObservationTable::row_classes() const {
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, CellsHash> ids;
  std::vector<std::size_t> out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = ids.emplace(rows_[i].cells, ids.size()).first->second;
  return out;
}

Defect ObservationTable::check_closed() const {
  auto cls = row_classes();
  std::unordered_set<std::size_t> in_s;
  for (auto i : s_order_) in_s.insert(cls[i]);
  const Word* best = nullptr;
  for (auto i : r_order_)
    if (!in_s.count(cls[i]) && (!best || shortlex_less(rows_[i].w, *best))) best = &rows_[i].w;
  if (!best) return {};
  return {DefectKind::NotClosed, *best, {}, {}, {}};
}

Defect ObservationTable::check_consistent() const {
  auto cls = row_classes();
  // (class of parent, last character) -> child rows
  std::map<std::pair<std::size_t, Char>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Word& w = rows_[i].w;
    if (w.empty()) continue;
    Word parent(w.begin(), w.end() - 1);
    groups[{cls[index_.at(parent)], w.back()}].push_back(i);
  }
  std::optional<Defect> best;
  for (auto& [key, kids] : groups) {
    if (kids.size() < 2) continue;
    std::sort(kids.begin(), kids.end(),
              [&](std::size_t x, std::size_t y) { return shortlex_less(rows_[x].w, rows_[y].w); });
    for (std::size_t i = 0; i < kids.size(); ++i) {
      std::size_t j = i + 1;
      while (j < kids.size() && cls[kids[j]] == cls[kids[i]]) ++j;
      if (j == kids.size()) continue;
      const Word& c1 = rows_[kids[i]].w;
      const Word& c2 = rows_[kids[j]].w;
      Defect d{DefectKind::NotConsistent, Word(c1.begin(), c1.end() - 1), Word(c2.begin(), c2.end() - 1), key.second, {}};
      if (!best || witness_less(d, *best)) best = d;
      break;
    }
  }
  if (!best) return {};
  const Row& r1 = row(append(best->w1, best->a));
  const Row& r2 = row(append(best->w2, best->a));
  const Word* e = nullptr;
  for (std::size_t c = 0; c < cols_.size(); ++c)
    if (r1.cells[c] != r2.cells[c] && (!e || shortlex_less(cols_[c].e, *e))) e = &cols_[c].e;
  best->e = *e;
  return *best;
}

Defect ObservationTable::check_evidence_closed() const {
  std::optional<Word> best;
  Defect d;
  for (auto i : s_order_)
    for (const auto& a : sigma_) {
      Word w = append(rows_[i].w, a);
      if (contains(w) || (best && !shortlex_less(w, *best))) continue;
      best = w;
      d = {DefectKind::NotEvidenceClosed, rows_[i].w, {}, a, {}};
    }
  return d;
}

Defect ObservationTable::check_output_closed() const {
  std::unordered_set<Char, CharHash> sig(sigma_.begin(), sigma_.end());
  const Word* best = nullptr;
  for (const auto& r : rows_)
    if (!r.w.empty() && !sig.count(r.w.back()) && (!best || shortlex_less(r.w, *best))) best = &r.w;
  if (!best) return {};
  return {DefectKind::NotOutputClosed, Word(best->begin(), best->end() - 1), {}, best->back(), {}};
}

Defect ObservationTable::check(RepairOrder order) const {
  Defect d = order == RepairOrder::ClosedFirst ? check_closed() : check_consistent();
  if (d.kind != DefectKind::Cohesive) return d;
  d = order == RepairOrder::ClosedFirst ? check_consistent() : check_closed();
  if (d.kind != DefectKind::Cohesive) return d;
  d = check_evidence_closed();
  if (d.kind != DefectKind::Cohesive) return d;
  return check_output_closed();
}

void ObservationTable::make_closed(const Word& r) {
  auto it = index_.find(r);
  if (it == index_.end() || rows_[it->second].in_s) throw TableError("make_closed: " + alg_->format(r) + " is not in R");
  auto cls = row_classes();
  for (auto i : s_order_)
    if (cls[i] == cls[it->second]) throw TableError("make_closed: row of " + alg_->format(r) + " already in S");
  r_order_.erase(std::find(r_order_.begin(), r_order_.end(), it->second));
  s_order_.push_back(it->second);
  rows_[it->second].in_s = true;
}

void ObservationTable::make_consistent(const Word& w1, const Word& w2, const Char& a, const Word& e) {
  const Row& r1 = row(w1);
  const Row& r2 = row(w2);
  if (r1.cells != r2.cells) throw TableError("make_consistent: rows differ");
  if (f(append(w1, a), e) == f(append(w2, a), e)) throw TableError("make_consistent: column does not separate");
  Word ae = Word{a};
  ae.insert(ae.end(), e.begin(), e.end());
  for (const auto& c : cols_)
    if (c.e == ae) throw TableError("make_consistent: column already present");
  add_column(ae, false);
  E_.push_back(ae);
}

void ObservationTable::make_evidence_closed(const Word& s, const Char& a) {
  if (!in_S(s)) throw TableError("make_evidence_closed: word not in S");
  if (std::find(sigma_.begin(), sigma_.end(), a) == sigma_.end())
    throw TableError("make_evidence_closed: character not in Sigma_E");
  Word w = append(s, a);
  if (contains(w)) throw TableError("make_evidence_closed: " + alg_->format(w) + " already present");
  for (std::size_t n = 1; n <= w.size(); ++n) {
    Word p(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
    if (!contains(p)) add_row(p);
  }
}

void ObservationTable::make_output_closed(const Word& w, const Char& a) {
  if (!contains(append(w, a))) throw TableError("make_output_closed: no such row");
  if (std::find(sigma_.begin(), sigma_.end(), a) != sigma_.end())
    throw TableError("make_output_closed: character already in Sigma_E");
  add_column(Word{a}, true);
  sigma_.push_back(a);
}

void ObservationTable::repair(const Defect& d) {
  switch (d.kind) {
    case DefectKind::NotClosed: return make_closed(d.w1);
    case DefectKind::NotConsistent: return make_consistent(d.w1, d.w2, d.a, d.e);
    case DefectKind::NotEvidenceClosed: return make_evidence_closed(d.w1, d.a);
    case DefectKind::NotOutputClosed: return make_output_closed(d.w1, d.a);
    case DefectKind::Cohesive: break;
  }
  throw TableError("repair called on a cohesive table");
}

std::size_t ObservationTable::add_counterexample(const Word& cex) {
  if (cex.empty()) throw TableError("counterexample must be non-empty");
  for (const auto& c : cex) alg_->check(c);
  std::size_t added = 0;
  for (std::size_t n = 1; n <= cex.size(); ++n) {
    Word p(cex.begin(), cex.begin() + static_cast<std::ptrdiff_t>(n));
    if (!contains(p)) {
      add_row(p);
      ++added;
    }
  }
  return added;
}

std::string ObservationTable::dump() const {
  auto cols = columns();
  std::vector<std::size_t> order;
  for (const auto& c : cols) order.push_back(column_index(c));
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> head{""};
  for (const auto& c : cols) head.push_back(alg_->format(c));
  lines.push_back(head);
  auto emit = [&](const std::vector<std::size_t>& ids) {
    for (auto i : ids) {
      std::vector<std::string> l{alg_->format(rows_[i].w)};
      for (auto c : order) l.push_back(gamma_[rows_[i].cells[c]]);
      lines.push_back(l);
    }
  };
  emit(s_order_);
  std::size_t sep = lines.size();
  emit(r_order_);
  std::vector<std::size_t> width(head.size(), 0);
  auto len = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
    return n;
  };
  for (const auto& l : lines)
    for (std::size_t k = 0; k < l.size(); ++k) width[k] = std::max(width[k], len(l[k]));
  std::ostringstream os;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i == 1 || i == sep) {
      std::size_t total = 0;
      for (auto w : width) total += w + 3;
      os << std::string(total, '-') << "\n";
    }
    for (std::size_t k = 0; k < lines[i].size(); ++k) {
      os << lines[i][k] << std::string(width[k] - len(lines[i][k]), ' ');
      os << (k == 0 ? " | " : (k + 1 < lines[i].size() ? "   " : ""));
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace smlearn
