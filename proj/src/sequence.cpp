#include "zerosum/sequence.hpp"

#include <sstream>
#include <stdexcept>

namespace zerosum {

void Sequence::push(const Element& e, std::int64_t count) {
    if (e.residues.size() != group.invariant_factors.size())
        throw std::invalid_argument("Sequence::push: element arity mismatch");
    push_index(e.index, count);
}

void Sequence::push_index(std::int64_t index, std::int64_t count) {
    if (count <= 0) throw std::invalid_argument("Sequence::push: count must be positive");
    if (index < 0 || index >= group.order())
        throw std::invalid_argument("Sequence::push: index out of range");
    mult_by_index[index] += count;
}

void Sequence::remove_index(std::int64_t index, std::int64_t count) {
    auto it = mult_by_index.find(index);
    if (it == mult_by_index.end() || it->second < count)
        throw std::invalid_argument("Sequence::remove: not enough copies");
    it->second -= count;
    if (it->second == 0) mult_by_index.erase(it);
}

Sequence make_sequence(const Group& g) { return Sequence{g, {}}; }

Sequence parse_sequence(const Group& g, std::string_view literal) {
    Sequence seq = make_sequence(g);
    std::string item;
    auto flush_item = [&] {
        if (item.empty()) return;
        std::int64_t mult = 1;
        std::string body = item;
        if (auto star = body.find('*'); star != std::string::npos) {
            std::string mstr = body.substr(star + 1);
            body = body.substr(0, star);
            std::size_t pos = 0;
            try {
                mult = std::stoll(mstr, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("parse_sequence: bad multiplicity '" + mstr + "'");
            }
            if (pos != mstr.size() || mult <= 0)
                throw std::invalid_argument("parse_sequence: bad multiplicity '" + mstr + "'");
        }
        std::vector<std::int64_t> residues;
        std::string tok;
        std::istringstream is(body);
        while (std::getline(is, tok, ',')) {
            std::size_t pos = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("parse_sequence: bad residue '" + tok + "'");
            }
            if (pos != tok.size())
                throw std::invalid_argument("parse_sequence: bad residue '" + tok + "'");
            residues.push_back(v);
        }
        seq.push(element_from_residues(g, std::move(residues)), mult);
        item.clear();
    };
    for (char c : literal) {
        if (c == ';')
            flush_item();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            item.push_back(c);
    }
    flush_item();
    return seq;
}

std::string format_sequence(const Sequence& s) {
    std::ostringstream os;
    bool first = true;
    for (auto& [idx, mult] : s.mult_by_index) {
        if (!first) os << "; ";
        first = false;
        Element e = element_from_index(s.group, idx);
        for (std::size_t i = 0; i < e.residues.size(); ++i) {
            if (i) os << ',';
            os << e.residues[i];
        }
        if (mult > 1) os << '*' << mult;
    }
    return os.str();
}

Element sum_of(const Sequence& s) {
    Element acc = zero(s.group);
    for (auto& [idx, mult] : s.mult_by_index)
        acc = add(s.group, acc, scalar_mul(s.group, mult, element_from_index(s.group, idx)));
    return acc;
}

bool contains(const Sequence& parent, const Sequence& sub) {
    if (parent.group != sub.group) return false;
    for (auto& [idx, mult] : sub.mult_by_index) {
        auto it = parent.mult_by_index.find(idx);
        if (it == parent.mult_by_index.end() || it->second < mult) return false;
    }
    return true;
}

bool witness_valid(const Witness& w, const Sequence& parent) {
    return !w.sub.empty() && contains(parent, w.sub) && sum_of(w.sub).index == 0;
}

}  // namespace zerosum
