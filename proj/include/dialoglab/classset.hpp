#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialoglab/acts.hpp"

namespace dialoglab {

// A target label in an experiment: either a taxonomy act or the catch-all
// "other" bucket covering every act outside the set.
struct ClassLabel {
    std::optional<Act> act;  // nullopt = catch-all

    bool is_catch_all() const { return !act.has_value(); }
    std::string_view name() const { return act ? act_name(*act) : std::string_view("other"); }

    bool operator==(const ClassLabel&) const = default;
};

enum class ClassSetKind { SixClass, EightClass, TenEasy, TenHard };

struct ClassSet {
    ClassSetKind kind = ClassSetKind::SixClass;
    std::string name;                 // "6", "8", "10easy", "10hard"
    std::vector<ClassLabel> labels;   // catch-all last

    std::size_t size() const { return labels.size(); }
};

const ClassSet& class_set(ClassSetKind kind);
std::optional<ClassSetKind> parse_class_set(std::string_view name);
const std::vector<ClassSetKind>& all_class_sets();

// Gold value for one label given a turn's majority acts. The catch-all is
// positive iff the set contains an act outside the named labels; an empty
// gold set is negative everywhere.
bool label_applies(const ClassSet& set, const ClassLabel& label, const ActSet& gold);

// One row of the turns x N gold matrix.
std::vector<char> gold_row(const ClassSet& set, const ActSet& gold);

}  // namespace dialoglab
