// Text formats: "SSET v1" for simplicial sets, "BSS v1" for bisimplicial
// sets (stored rows or virtual rules), "CAT v1" for finite categories and
// finite simplicial categories. Parsers reject malformed input with
// line-numbered errors and re-validate every structural invariant.
#ifndef SEGALKIT_IO_HPP
#define SEGALKIT_IO_HPP

#include "segalkit/bis.hpp"
#include "segalkit/cat.hpp"

namespace sk {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what),
          line(line_) {}
};

std::string emit_sset(const SSet& X);
SSetPtr parse_sset(const std::string& text);

// A parsed "BSS v1" document. Stored documents carry `rows` materialized
// rows with their generator operators; virtual documents record the rule
// they were rebuilt from.
struct BssData {
    BisimPtr bis;
    std::string name;
    int rows = 0;              // stored row count; 0 for virtual documents
    bool discrete0 = false;
    std::string virtual_rule;  // "constant", "transpose", "cosk0", "psi", or ""
};

// Stored form: rows 0..window with all face/degeneracy operators.
std::string emit_bss(const BisimPtr& X, int window, bool discrete0 = false);
// Virtual forms keep only the generating data.
std::string emit_bss_virtual(const std::string& rule, const SSetPtr& base);
std::string emit_bss_virtual_psi(int n, const std::vector<int>& labels,
                                 int nobjects, int spread);
BssData parse_bss(const std::string& text);

std::string emit_cat(const FiniteCategory& C);
FiniteCategory parse_cat(const std::string& text);

std::string emit_scat(const FiniteSimplicialCategory& C);
FiniteSimplicialCategory parse_scat(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace sk

#endif
