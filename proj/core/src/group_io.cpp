#include "symdecomp/group_io.hpp"

#include "symdecomp/error.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace symdecomp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(ErrorCode::InvalidGroupFile, "line " + std::to_string(line) + ": " + message);
}

std::vector<double> parse_numbers(const std::string& text, int line) {
  std::vector<double> out;
  std::istringstream tokens(text);
  std::string token;
  while (tokens >> token) {
    if (token.find_first_of("iIjJ") != std::string::npos) fail(line, "complex value '" + token + "' not supported");
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') fail(line, "not a number: '" + token + "'");
    out.push_back(v);
  }
  return out;
}

struct Section {
  std::string kind;
  int line = 0;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> entries;  // key -> (value, line)

  const std::pair<std::string, int>* find(const std::string& key) const {
    for (const auto& e : entries) {
      if (e.first == key) return &e.second;
    }
    return nullptr;
  }
};

}  // namespace

PointGroup parse_group(std::istream& in) {
  std::vector<Section> sections;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail(line, "unterminated section header");
      sections.push_back({trim(text.substr(1, text.size() - 2)), line, {}});
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    if (sections.empty()) fail(line, "entry outside of a section");
    sections.back().entries.push_back({trim(text.substr(0, eq)), {trim(text.substr(eq + 1)), line}});
  }

  std::string name = "CUSTOM";
  int dim = 0;
  std::vector<SymmetryOperation> elements;
  std::vector<const Section*> irrep_sections;
  for (const auto& section : sections) {
    if (section.kind == "group") {
      if (const auto* v = section.find("name")) name = v->first;
      const auto* d = section.find("dim");
      if (!d) fail(section.line, "[group] needs dim");
      dim = std::atoi(d->first.c_str());
      if (dim != 2 && dim != 3) fail(d->second, "dim must be 2 or 3");
    } else if (section.kind == "element") {
      const auto* label = section.find("label");
      const auto* matrix = section.find("matrix");
      if (!label || !matrix) fail(section.line, "[element] needs label and matrix");
      if (dim == 0) fail(section.line, "[group] with dim must come first");
      const auto values = parse_numbers(matrix->first, matrix->second);
      if (static_cast<int>(values.size()) != dim * dim) fail(matrix->second, "matrix needs dim*dim entries");
      Eigen::MatrixXd m(dim, dim);
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) m(r, c) = values[static_cast<std::size_t>(r * dim + c)];
      }
      elements.push_back({label->first, m});
    } else if (section.kind == "irrep") {
      irrep_sections.push_back(&section);
    } else {
      fail(section.line, "unknown section [" + section.kind + "]");
    }
  }
  if (elements.empty()) fail(line, "no elements defined");

  std::vector<Irrep> irreps;
  for (const Section* section : irrep_sections) {
    Irrep irrep;
    irrep.index = static_cast<int>(irreps.size()) + 1;
    const auto* d = section->find("dim");
    irrep.dim = d ? std::atoi(d->first.c_str()) : 1;
    if (irrep.dim < 1) fail(section->line, "irrep dim must be positive");
    for (const auto& op : elements) {
      const auto* entry = section->find(op.label);
      if (!entry) fail(section->line, "irrep " + std::to_string(irrep.index) + " has no matrix for " + op.label);
      const auto values = parse_numbers(entry->first, entry->second);
      if (static_cast<int>(values.size()) != irrep.dim * irrep.dim) fail(entry->second, "irrep matrix needs dim*dim entries");
      Eigen::MatrixXd m(irrep.dim, irrep.dim);
      for (int r = 0; r < irrep.dim; ++r) {
        for (int c = 0; c < irrep.dim; ++c) m(r, c) = values[static_cast<std::size_t>(r * irrep.dim + c)];
      }
      irrep.matrices.push_back(m);
    }
    irreps.push_back(std::move(irrep));
  }
  return PointGroup(name, std::move(elements), std::move(irreps));
}

PointGroup read_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_group(in);
}

void write_group(const PointGroup& group, std::ostream& out) {
  out << std::setprecision(17);
  out << "[group]\nname = " << group.name() << "\ndim = " << group.dim() << "\n";
  auto write_matrix = [&out](const Eigen::MatrixXd& m) {
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        if (r + c > 0) out << ' ';
        out << (m(r, c) == 0.0 ? 0.0 : m(r, c));
      }
    }
  };
  for (const auto& op : group.elements()) {
    out << "\n[element]\nlabel = " << op.label << "\nmatrix = ";
    write_matrix(op.matrix);
    out << '\n';
  }
  for (const auto& irrep : group.irreps()) {
    out << "\n[irrep]\ndim = " << irrep.dim << '\n';
    for (int r = 0; r < group.order(); ++r) {
      out << group.element(r).label << " = ";
      write_matrix(irrep.matrices[static_cast<std::size_t>(r)]);
      out << '\n';
    }
  }
}

}  // namespace symdecomp
