#include "dialoglab/classset.hpp"

namespace dialoglab {

namespace {

ClassSet make_set(ClassSetKind kind, std::string name, std::vector<Act> acts) {
    ClassSet set;
    set.kind = kind;
    set.name = std::move(name);
    for (Act a : acts) set.labels.push_back(ClassLabel{a});
    set.labels.push_back(ClassLabel{});  // catch-all
    return set;
}

const std::vector<Act> kSixActs{Act::StatementInfo, Act::RequestInfo, Act::StatementComplaint,
                                Act::QuestionYesNo, Act::StatementExprNeg};
const std::vector<Act> kEightActs = [] {
    auto acts = kSixActs;
    acts.push_back(Act::StatementSuggestion);
    acts.push_back(Act::AnswerOther);
    return acts;
}();

}  // namespace

const ClassSet& class_set(ClassSetKind kind) {
    static const ClassSet six = make_set(ClassSetKind::SixClass, "6", kSixActs);
    static const ClassSet eight = make_set(ClassSetKind::EightClass, "8", kEightActs);
    static const ClassSet ten_easy = make_set(ClassSetKind::TenEasy, "10easy", [] {
        auto acts = kEightActs;
        acts.push_back(Act::SocialActApology);
        acts.push_back(Act::SocialActThanks);
        return acts;
    }());
    static const ClassSet ten_hard = make_set(ClassSetKind::TenHard, "10hard", [] {
        auto acts = kEightActs;
        acts.push_back(Act::StatementOffer);
        acts.push_back(Act::QuestionOpen);
        return acts;
    }());
    switch (kind) {
        case ClassSetKind::SixClass: return six;
        case ClassSetKind::EightClass: return eight;
        case ClassSetKind::TenEasy: return ten_easy;
        case ClassSetKind::TenHard: return ten_hard;
    }
    return six;
}

std::optional<ClassSetKind> parse_class_set(std::string_view name) {
    if (name == "6") return ClassSetKind::SixClass;
    if (name == "8") return ClassSetKind::EightClass;
    if (name == "10easy") return ClassSetKind::TenEasy;
    if (name == "10hard") return ClassSetKind::TenHard;
    return std::nullopt;
}

const std::vector<ClassSetKind>& all_class_sets() {
    static const std::vector<ClassSetKind> kinds{ClassSetKind::SixClass, ClassSetKind::EightClass,
                                                 ClassSetKind::TenEasy, ClassSetKind::TenHard};
    return kinds;
}

bool label_applies(const ClassSet& set, const ClassLabel& label, const ActSet& gold) {
    if (label.act) return gold.count(*label.act) > 0;
    for (Act a : gold) {
        bool named = false;
        for (const auto& l : set.labels)
            if (l.act && *l.act == a) { named = true; break; }
        if (!named) return true;
    }
    return false;
}

std::vector<char> gold_row(const ClassSet& set, const ActSet& gold) {
    std::vector<char> row(set.labels.size(), 0);
    for (std::size_t i = 0; i < set.labels.size(); ++i)
        row[i] = label_applies(set, set.labels[i], gold) ? 1 : 0;
    return row;
}

}  // namespace dialoglab
