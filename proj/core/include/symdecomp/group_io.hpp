#pragma once

#include "symdecomp/group.hpp"

#include <filesystem>
#include <iosfwd>

namespace symdecomp {

/// Text group definition. Sections start with a bracketed header; each line
/// inside is `key = value`, `#` starts a comment.
///
///     [group]
///     name = D2
///     dim = 3
///
///     [element]                 # one section per element, identity first
///     label = C2x
///     matrix = 1 0 0  0 -1 0  0 0 -1      # row-major dim×dim
///
///     [irrep]                   # one section per irrep, in ν order
///     dim = 1
///     E = 1                     # element label = row-major d×d matrix
///     C2x = -1
///
/// Complex entries are rejected. The parsed group is returned unverified;
/// callers run verify_group_axioms.
PointGroup parse_group(std::istream& in);
PointGroup read_group_file(const std::filesystem::path& path);
void write_group(const PointGroup& group, std::ostream& out);

}  // namespace symdecomp
