#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "smlearn/algebra.hpp"

namespace smlearn {

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Source of output queries M_tgt(w), |w| >= 1.
class OutputChannel {
 public:
  virtual ~OutputChannel() = default;
  virtual std::string output_query(const Word& w) = 0;
};

enum class DefectKind { Cohesive, NotClosed, NotConsistent, NotEvidenceClosed, NotOutputClosed };

// NotClosed(w1); NotConsistent(w1, w2, a, e); NotEvidenceClosed(w1, a);
// NotOutputClosed(w1, a).
struct Defect {
  DefectKind kind = DefectKind::Cohesive;
  Word w1;
  Word w2;
  Char a;
  Word e;
};

const char* defect_name(DefectKind k);

// Order in which check() looks for defects.
enum class RepairOrder {
  ConsistentFirst,  // consistent, closed, evidence-closed, output-closed
  ClosedFirst,      // closed, consistent, evidence-closed, output-closed
};

class ObservationTable {
 public:
  ObservationTable(AlgebraPtr alg, const Char& a0, OutputChannel& oracle);

  const AlgebraPtr& algebra() const { return alg_; }
  std::vector<Word> S() const;
  std::vector<Word> R() const;
  const std::vector<Char>& sigma_e() const { return sigma_; }
  const std::vector<Word>& E() const { return E_; }
  // Columns in display order: Sigma_E, then E.
  std::vector<Word> columns() const;

  bool contains(const Word& w) const { return index_.count(w) != 0; }
  bool in_S(const Word& w) const;
  const std::string& f(const Word& w, const Word& e) const;
  // Identifier of row(w); equal rows share an identifier.
  std::size_t row_id(const Word& w) const;
  std::vector<std::size_t> row_ids(const std::vector<Word>& ws) const;
  const std::vector<std::string>& gamma() const { return gamma_; }

  Defect check(RepairOrder order = RepairOrder::ConsistentFirst) const;
  Defect check_closed() const;
  Defect check_consistent() const;
  Defect check_evidence_closed() const;
  Defect check_output_closed() const;

  void make_closed(const Word& r);
  void make_consistent(const Word& w1, const Word& w2, const Char& a, const Word& e);
  void make_evidence_closed(const Word& s, const Char& a);
  void make_output_closed(const Word& w, const Char& a);
  void repair(const Defect& d);
  // Returns the number of prefixes added to R.
  std::size_t add_counterexample(const Word& cex);

  std::size_t distinct_queries() const { return cache_.size(); }
  std::size_t repeated_queries() const { return repeats_; }

  // Text rendering: S rows, a separator, R rows; columns Sigma_E then E.
  std::string dump() const;

 private:
  struct Row {
    Word w;
    bool in_s = false;
    std::vector<std::uint32_t> cells;  // column creation order
  };
  struct Column {
    Word e;
    bool is_char;
  };

  std::uint32_t query(const Word& w);
  void add_row(const Word& w);
  void add_column(const Word& e, bool is_char);
  std::vector<std::size_t> row_classes() const;
  std::size_t column_index(const Word& e) const;
  const Row& row(const Word& w) const;

  AlgebraPtr alg_;
  OutputChannel* oracle_;
  std::vector<Row> rows_;  // insertion order
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<std::size_t> s_order_, r_order_;
  std::vector<Column> cols_;  // creation order
  std::vector<Char> sigma_;
  std::vector<Word> E_;
  std::vector<std::string> gamma_;
  std::unordered_map<Word, std::uint32_t, WordHash> cache_;
  std::size_t repeats_ = 0;
};

}  // namespace smlearn
