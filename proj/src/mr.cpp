#include "darank/mr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "darank/error.hpp"
#include "darank/text.hpp"

namespace darank {

const Attribute* MeaningRepresentation::find(std::string_view slot) const {
  for (const auto& a : attributes) {
    if (a.slot == slot) return &a;
  }
  return nullptr;
}

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' || c == '?';
}

class MrParser {
 public:
  MrParser(std::string_view src, const DomainOntology& ontology) : src_(src), ontology_(ontology) {}

  MeaningRepresentation parse() {
    MeaningRepresentation mr;
    skip_ws();
    const std::size_t da_pos = pos_;
    mr.dialogue_act = ident("dialogue act name");
    if (!ontology_.has_da(mr.dialogue_act)) {
      throw Error(Errc::UnknownDialogueAct, "'" + mr.dialogue_act + "' is not a dialogue act of domain " +
                                                ontology_.domain_name, da_pos);
    }
    skip_ws();
    expect('(');
    skip_ws();
    std::set<std::string> seen;
    if (peek() != ')') {
      while (true) {
        skip_ws();
        const std::size_t slot_pos = pos_;
        Attribute attr;
        attr.slot = ident("slot name");
        const SlotInfo* info = ontology_.find_slot(attr.slot);
        if (!info) throw Error(Errc::UnknownSlot, "'" + attr.slot + "'", slot_pos);
        if (!seen.insert(attr.slot).second) throw Error(Errc::DuplicateSlot, "'" + attr.slot + "'", slot_pos);
        skip_ws();
        expect('[');
        const std::size_t value_pos = pos_;
        attr.value = value();
        expect(']');
        if (info->kind == SlotKind::Boolean) resolve_boolean(attr, value_pos);
        mr.attributes.push_back(std::move(attr));
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(')');
    skip_ws();
    if (pos_ != src_.size()) fail("trailing characters after ')'");
    if (mr.attributes.empty() && !ontology_.content_free.count(mr.dialogue_act)) {
      throw Error(Errc::MalformedSyntax, "dialogue act '" + mr.dialogue_act + "' requires attributes", pos_);
    }
    return mr;
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const { throw Error(Errc::MalformedSyntax, what, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (peek() != c || pos_ >= src_.size()) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string value() {
    std::string out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ']') return out;
      if (c == '\\' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == ']' || src_[pos_ + 1] == '\\')) {
        out.push_back(src_[pos_ + 1]);
        pos_ += 2;
        continue;
      }
      out.push_back(c);
      ++pos_;
    }
    fail("unterminated value, expected ']'");
  }

  void resolve_boolean(Attribute& attr, std::size_t value_pos) const {
    const std::string v = text::to_lower(text::trim(attr.value));
    if (v.empty()) {
      // slot named without a value, e.g. request_attribute(has_multiplayer[])
      attr.value.clear();
    } else if (v == "yes" || v == "true") {
      attr.kind = AttributeKind::BooleanTrue;
      attr.value = "yes";
    } else if (v == "no" || v == "false") {
      attr.kind = AttributeKind::BooleanFalse;
      attr.value = "no";
    } else {
      throw Error(Errc::MalformedSyntax,
                  "boolean slot '" + attr.slot + "' has non-boolean value '" + attr.value + "'", value_pos);
    }
  }

  std::string_view src_;
  const DomainOntology& ontology_;
  std::size_t pos_ = 0;
};

std::string escape_value(std::string_view v) {
  std::string out;
  for (char c : v) {
    if (c == ']' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

MeaningRepresentation parse_mr(std::string_view raw, const DomainOntology& ontology) {
  if (text::trim(raw).empty()) throw Error(Errc::MalformedSyntax, "empty meaning representation", 0);
  return MrParser(raw, ontology).parse();
}

std::string serialize_mr(const MeaningRepresentation& mr) {
  std::string out = mr.dialogue_act + "(";
  for (std::size_t i = 0; i < mr.attributes.size(); ++i) {
    if (i) out += ", ";
    out += mr.attributes[i].slot + "[" + escape_value(mr.attributes[i].value) + "]";
  }
  out += ")";
  return out;
}

std::string humanize_slot(std::string_view slot) {
  std::string s(slot);
  for (std::string_view prefix : {"has_", "is_"}) {
    if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0) {
      s.erase(0, prefix.size());
      break;
    }
  }
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

std::string humanize_slot(std::string_view slot, const DomainOntology& ontology) {
  if (!ontology.find_slot(slot)) throw Error(Errc::UnknownSlot, "'" + std::string(slot) + "'");
  return humanize_slot(slot);
}

std::string slot_phrase(std::string_view slot, const DomainOntology& ontology) {
  const SlotInfo* info = ontology.find_slot(slot);
  if (!info) throw Error(Errc::UnknownSlot, "'" + std::string(slot) + "'");
  return info->phrase ? *info->phrase : humanize_slot(slot);
}

PseudoReference build_pseudo_reference(const MeaningRepresentation& mr, const DomainOntology& ontology) {
  std::vector<std::string> parts;
  for (const auto& a : mr.attributes) {
    switch (a.kind) {
      case AttributeKind::Categorical: {
        std::string v;
        for (char c : a.value) {
          if (c != '(' && c != ')') v.push_back(c);
        }
        // dropping parentheses can leave doubled or edge spaces
        auto words = text::split_whitespace(v);
        if (!words.empty()) parts.push_back(text::join(words, " "));
        break;
      }
      case AttributeKind::BooleanTrue:
        parts.push_back(slot_phrase(a.slot, ontology));
        break;
      case AttributeKind::BooleanFalse:
        parts.push_back("no " + slot_phrase(a.slot, ontology));
        break;
    }
  }
  return PseudoReference{text::join(parts, " "), mr};
}

std::string starter_for(std::string_view da, const DomainOntology& ontology, StarterForm form) {
  const auto& table = form == StarterForm::Declarative ? ontology.starters : ontology.questions;
  auto it = table.find(std::string(da));
  if (it == table.end()) {
    throw Error(Errc::MissingStarter, std::string(form == StarterForm::Declarative ? "declarative" : "question") +
                                          " starter for '" + std::string(da) + "'");
  }
  return it->second;
}

}  // namespace darank
