#include "koebe/words.hpp"

#include <string>

namespace koebe {

namespace {

struct Walker {
    std::vector<Moebius> letters;
    int max_length;
    const std::function<bool(const Word&, const Moebius&)>& visit;
    Word word;

    bool descend(const Moebius& prefix) {
        if (static_cast<int>(word.size()) == max_length) return true;
        for (int l = 0; l < static_cast<int>(letters.size()); ++l) {
            if (!word.empty() && (word.back() ^ 1) == l) continue;  // no x x^-1
            word.push_back(l);
            Moebius m = prefix * letters[l];
            bool go_on = visit(word, m) && descend(m);
            word.pop_back();
            if (!go_on) return false;
        }
        return true;
    }
};

}  // namespace

bool for_each_word(const std::vector<Moebius>& generators, int max_length,
                   const std::function<bool(const Word&, const Moebius&)>& visit) {
    Walker w{{}, max_length, visit, {}};
    for (const Moebius& g : generators) {
        w.letters.push_back(g);
        w.letters.push_back(g.inverse());
    }
    return w.descend(Moebius::identity());
}

std::string word_string(const Word& w) {
    std::string s;
    for (int l : w) {
        if (!s.empty()) s += ' ';
        s += "g" + std::to_string(l / 2 + 1);
        if (l & 1) s += "^-1";
    }
    return s.empty() ? "1" : s;
}

}  // namespace koebe
