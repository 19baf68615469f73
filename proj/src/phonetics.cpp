#include "topicnoise/phonetics.hpp"

#include <initializer_list>
#include <limits>

namespace topicnoise {
namespace {

// Encoder state for one word. The word is upper-cased and padded with spaces
// so that look-ahead past the end sees ' ', as in the reference encoder.
class DoubleMetaphoneEncoder {
 public:
  explicit DoubleMetaphoneEncoder(std::string_view word) {
    for (char c : word) {
      buf_ += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
    }
    length_ = static_cast<int>(buf_.size());
    last_ = length_ - 1;
    buf_ += "     ";
    slavo_germanic_ = buf_.find('W') != std::string::npos || buf_.find('K') != std::string::npos ||
                      buf_.find("CZ") != std::string::npos || buf_.find("WITZ") != std::string::npos;
  }

  MetaphoneCodes encode(std::size_t max_length);

 private:
  char at(int i) const {
    return (i < 0 || i >= static_cast<int>(buf_.size())) ? '\0' : buf_[static_cast<std::size_t>(i)];
  }

  bool is_vowel(int i) const {
    switch (at(i)) {
      case 'A': case 'E': case 'I': case 'O': case 'U': case 'Y': return true;
      default: return false;
    }
  }

  bool string_at(int start, int len, std::initializer_list<std::string_view> options) const {
    if (start < 0 || start + len > static_cast<int>(buf_.size())) return false;
    const std::string_view piece = std::string_view(buf_).substr(static_cast<std::size_t>(start), static_cast<std::size_t>(len));
    for (auto option : options) {
      if (piece == option) return true;
    }
    return false;
  }

  void add(std::string_view both) {
    primary_ += both;
    secondary_ += both;
  }

  void add(std::string_view main, std::string_view alt) {
    primary_ += main;
    if (!alt.empty() && alt[0] != ' ') secondary_ += alt;
  }

  int handle_c(int current);
  int handle_g(int current);
  int handle_j(int current);
  int handle_l(int current);
  int handle_s(int current);
  int handle_t(int current);
  int handle_w(int current);

  std::string buf_;
  int length_ = 0;
  int last_ = 0;
  bool slavo_germanic_ = false;
  std::string primary_;
  std::string secondary_;
};

MetaphoneCodes DoubleMetaphoneEncoder::encode(std::size_t max_length) {
  if (length_ < 1) return {};
  int current = 0;

  if (string_at(0, 2, {"GN", "KN", "PN", "WR", "PS"})) current += 1;
  // initial 'X' sounds like 'Z' ("Xavier"), which maps to 'S'
  if (at(0) == 'X') {
    add("S");
    current += 1;
  }

  while (primary_.size() < max_length || secondary_.size() < max_length) {
    if (current >= length_) break;
    switch (at(current)) {
      case 'A': case 'E': case 'I': case 'O': case 'U': case 'Y':
        if (current == 0) add("A");
        current += 1;
        break;

      case 'B':
        // "-mb" is handled under 'M'
        add("P");
        current += at(current + 1) == 'B' ? 2 : 1;
        break;

      case 'C':
        current = handle_c(current);
        break;

      case 'D':
        if (string_at(current, 2, {"DG"})) {
          if (string_at(current + 2, 1, {"I", "E", "Y"})) {  // "edge"
            add("J");
            current += 3;
          } else {  // "edgar"
            add("TK");
            current += 2;
          }
        } else if (string_at(current, 2, {"DT", "DD"})) {
          add("T");
          current += 2;
        } else {
          add("T");
          current += 1;
        }
        break;

      case 'F':
        add("F");
        current += at(current + 1) == 'F' ? 2 : 1;
        break;

      case 'G':
        current = handle_g(current);
        break;

      case 'H':
        // keep only at the start or between vowels; also covers "HH"
        if ((current == 0 || is_vowel(current - 1)) && is_vowel(current + 1)) {
          add("H");
          current += 2;
        } else {
          current += 1;
        }
        break;

      case 'J':
        current = handle_j(current);
        break;

      case 'K':
        add("K");
        current += at(current + 1) == 'K' ? 2 : 1;
        break;

      case 'L':
        current = handle_l(current);
        break;

      case 'M':
        // "dumb", "thumb", "dumber"
        if ((string_at(current - 1, 3, {"UMB"}) && (current + 1 == last_ || string_at(current + 2, 2, {"ER"}))) ||
            at(current + 1) == 'M') {
          current += 2;
        } else {
          current += 1;
        }
        add("M");
        break;

      case 'N':
        add("N");
        current += at(current + 1) == 'N' ? 2 : 1;
        break;

      case 'P':
        if (at(current + 1) == 'H') {
          add("F");
          current += 2;
        } else {
          // "campbell", "raspberry"
          add("P");
          current += string_at(current + 1, 1, {"P", "B"}) ? 2 : 1;
        }
        break;

      case 'Q':
        add("K");
        current += at(current + 1) == 'Q' ? 2 : 1;
        break;

      case 'R':
        // French "rogier", but not "hochmeier"
        if (current == last_ && !slavo_germanic_ && string_at(current - 2, 2, {"IE"}) &&
            !string_at(current - 4, 2, {"ME", "MA"})) {
          add("", "R");
        } else {
          add("R");
        }
        current += at(current + 1) == 'R' ? 2 : 1;
        break;

      case 'S':
        current = handle_s(current);
        break;

      case 'T':
        current = handle_t(current);
        break;

      case 'V':
        add("F");
        current += at(current + 1) == 'V' ? 2 : 1;
        break;

      case 'W':
        current = handle_w(current);
        break;

      case 'X':
        // French "breaux"
        if (!(current == last_ && (string_at(current - 3, 3, {"IAU", "EAU"}) || string_at(current - 2, 2, {"AU", "OU"})))) {
          add("KS");
        }
        current += string_at(current + 1, 1, {"C", "X"}) ? 2 : 1;
        break;

      case 'Z':
        if (at(current + 1) == 'H') {  // Chinese pinyin "zhao"
          add("J");
          current += 2;
          break;
        }
        if (string_at(current + 1, 2, {"ZO", "ZI", "ZA"}) ||
            (slavo_germanic_ && current > 0 && at(current - 1) != 'T')) {
          add("S", "TS");
        } else {
          add("S");
        }
        current += at(current + 1) == 'Z' ? 2 : 1;
        break;

      default:
        current += 1;
    }
  }

  MetaphoneCodes codes;
  codes.primary = primary_.substr(0, max_length);
  std::string alt = secondary_.substr(0, max_length);
  if (alt != codes.primary) codes.alternate = std::move(alt);
  return codes;
}

int DoubleMetaphoneEncoder::handle_c(int current) {
  // various Germanic
  if (current > 1 && !is_vowel(current - 2) && string_at(current - 1, 3, {"ACH"}) && at(current + 2) != 'I' &&
      (at(current + 2) != 'E' || string_at(current - 2, 6, {"BACHER", "MACHER"}))) {
    add("K");
    return current + 2;
  }
  if (current == 0 && string_at(current, 6, {"CAESAR"})) {
    add("S");
    return current + 2;
  }
  // Italian "chianti"
  if (string_at(current, 4, {"CHIA"})) {
    add("K");
    return current + 2;
  }
  if (string_at(current, 2, {"CH"})) {
    // "michael"
    if (current > 0 && string_at(current, 4, {"CHAE"})) {
      add("K", "X");
      return current + 2;
    }
    // Greek roots, e.g. "chemistry", "chorus"
    if (current == 0 && (string_at(current + 1, 5, {"HARAC", "HARIS"}) || string_at(current + 1, 3, {"HOR", "HYM", "HIA", "HEM"})) &&
        !string_at(0, 5, {"CHORE"})) {
      add("K");
      return current + 2;
    }
    // Germanic, Greek, or otherwise 'ch' for 'kh' sound
    if (string_at(0, 4, {"VAN ", "VON "}) || string_at(0, 3, {"SCH"}) ||
        string_at(current - 2, 6, {"ORCHES", "ARCHIT", "ORCHID"}) || string_at(current + 2, 1, {"T", "S"}) ||
        ((string_at(current - 1, 1, {"A", "O", "U", "E"}) || current == 0) &&
         string_at(current + 2, 1, {"L", "R", "N", "M", "B", "H", "F", "V", "W", " "}))) {
      add("K");
    } else if (current > 0) {
      if (string_at(0, 2, {"MC"})) {
        add("K");
      } else {
        add("X", "K");
      }
    } else {
      add("X");
    }
    return current + 2;
  }
  // "czerny"
  if (string_at(current, 2, {"CZ"}) && !string_at(current - 2, 4, {"WICZ"})) {
    add("S", "X");
    return current + 2;
  }
  // "focaccia"
  if (string_at(current + 1, 3, {"CIA"})) {
    add("X");
    return current + 3;
  }
  // double 'C', but not "McClellan"
  if (string_at(current, 2, {"CC"}) && !(current == 1 && at(0) == 'M')) {
    // "bellocchio" but not "bacchus"
    if (string_at(current + 2, 1, {"I", "E", "H"}) && !string_at(current + 2, 2, {"HU"})) {
      // "accident", "accede", "succeed"
      if ((current == 1 && at(current - 1) == 'A') || string_at(current - 1, 5, {"UCCEE", "UCCES"})) {
        add("KS");
      } else {  // "bacci", "bertucci"
        add("X");
      }
      return current + 3;
    }
    // Pierce's rule
    add("K");
    return current + 2;
  }
  if (string_at(current, 2, {"CK", "CG", "CQ"})) {
    add("K");
    return current + 2;
  }
  if (string_at(current, 2, {"CI", "CE", "CY"})) {
    // Italian vs. English
    if (string_at(current, 3, {"CIO", "CIE", "CIA"})) {
      add("S", "X");
    } else {
      add("S");
    }
    return current + 2;
  }
  add("K");
  // "mac caffrey", "mac gregor"
  if (string_at(current + 1, 2, {" C", " Q", " G"})) return current + 3;
  if (string_at(current + 1, 1, {"C", "K", "Q"}) && !string_at(current + 1, 2, {"CE", "CI"})) return current + 2;
  return current + 1;
}

int DoubleMetaphoneEncoder::handle_g(int current) {
  if (at(current + 1) == 'H') {
    if (current > 0 && !is_vowel(current - 1)) {
      add("K");
      return current + 2;
    }
    if (current < 3 && current == 0) {
      // "ghislane", "ghiradelli"
      add(at(current + 2) == 'I' ? "J" : "K");
      return current + 2;
    }
    // Parker's rule, e.g. "hugh"
    if ((current > 1 && string_at(current - 2, 1, {"B", "H", "D"})) ||
        (current > 2 && string_at(current - 3, 1, {"B", "H", "D"})) ||
        (current > 3 && string_at(current - 4, 1, {"B", "H"}))) {
      return current + 2;
    }
    // "laugh", "McLaughlin", "cough", "gough", "rough", "tough"
    if (current > 2 && at(current - 1) == 'U' && string_at(current - 3, 1, {"C", "G", "L", "R", "T"})) {
      add("F");
    } else if (current > 0 && at(current - 1) != 'I') {
      add("K");
    }
    return current + 2;
  }

  if (at(current + 1) == 'N') {
    if (current == 1 && is_vowel(0) && !slavo_germanic_) {
      add("KN", "N");
    } else if (!string_at(current + 2, 2, {"EY"}) && at(current + 1) != 'Y' && !slavo_germanic_) {
      // not "cagney"
      add("N", "KN");
    } else {
      add("KN");
    }
    return current + 2;
  }

  // "tagliaro"
  if (string_at(current + 1, 2, {"LI"}) && !slavo_germanic_) {
    add("KL", "L");
    return current + 2;
  }

  // -ges-, -gep-, -gel-, -gie- at beginning
  if (current == 0 && (at(current + 1) == 'Y' ||
                       string_at(current + 1, 2, {"ES", "EP", "EB", "EL", "EY", "IB", "IL", "IN", "IE", "EI", "ER"}))) {
    add("K", "J");
    return current + 2;
  }

  // -ger-, -gy-
  if ((string_at(current + 1, 2, {"ER"}) || at(current + 1) == 'Y') && !string_at(0, 6, {"DANGER", "RANGER", "MANGER"}) &&
      !string_at(current - 1, 1, {"E", "I"}) && !string_at(current - 1, 3, {"RGY", "OGY"})) {
    add("K", "J");
    return current + 2;
  }

  // Italian "biaggi"
  if (string_at(current + 1, 1, {"E", "I", "Y"}) || string_at(current - 1, 4, {"AGGI", "OGGI"})) {
    if (string_at(0, 4, {"VAN ", "VON "}) || string_at(0, 3, {"SCH"}) || string_at(current + 1, 2, {"ET"})) {
      add("K");
    } else if (string_at(current + 1, 4, {"IER "})) {
      add("J");
    } else {
      add("J", "K");
    }
    return current + 2;
  }

  add("K");
  return current + (at(current + 1) == 'G' ? 2 : 1);
}

int DoubleMetaphoneEncoder::handle_j(int current) {
  // Spanish "jose", "san jacinto"
  if (string_at(current, 4, {"JOSE"}) || string_at(0, 4, {"SAN "})) {
    if ((current == 0 && at(current + 4) == ' ') || string_at(0, 4, {"SAN "})) {
      add("H");
    } else {
      add("J", "H");
    }
    return current + 1;
  }

  if (current == 0 && !string_at(current, 4, {"JOSE"})) {
    add("J", "A");  // Yankelovich / Jankelowicz
  } else if (is_vowel(current - 1) && !slavo_germanic_ && (at(current + 1) == 'A' || at(current + 1) == 'O')) {
    add("J", "H");  // Spanish "bajador"
  } else if (current == last_) {
    add("J", " ");
  } else if (!string_at(current + 1, 1, {"L", "T", "K", "S", "N", "M", "B", "Z"}) &&
             !string_at(current - 1, 1, {"S", "K", "L"})) {
    add("J");
  }
  return current + (at(current + 1) == 'J' ? 2 : 1);
}

int DoubleMetaphoneEncoder::handle_l(int current) {
  if (at(current + 1) == 'L') {
    // Spanish "cabrillo", "gallegos"
    if ((current == length_ - 3 && string_at(current - 1, 4, {"ILLO", "ILLA", "ALLE"})) ||
        ((string_at(last_ - 1, 2, {"AS", "OS"}) || string_at(last_, 1, {"A", "O"})) &&
         string_at(current - 1, 4, {"ALLE"}))) {
      primary_ += "L";
      return current + 2;
    }
    add("L");
    return current + 2;
  }
  add("L");
  return current + 1;
}

int DoubleMetaphoneEncoder::handle_s(int current) {
  // "island", "isle", "carlisle", "carlysle"
  if (string_at(current - 1, 3, {"ISL", "YSL"})) return current + 1;

  // "sugar-"
  if (current == 0 && string_at(current, 5, {"SUGAR"})) {
    add("X", "S");
    return current + 1;
  }

  if (string_at(current, 2, {"SH"})) {
    // Germanic
    add(string_at(current + 1, 4, {"HEIM", "HOEK", "HOLM", "HOLZ"}) ? "S" : "X");
    return current + 2;
  }

  // Italian and Armenian
  if (string_at(current, 3, {"SIO", "SIA"}) || string_at(current, 4, {"SIAN"})) {
    if (!slavo_germanic_) {
      add("S", "X");
    } else {
      add("S");
    }
    return current + 3;
  }

  // German and anglicisations: "smith" matches "schmidt", "snider" matches
  // "schneider"; -sz- in Slavic languages
  if ((current == 0 && string_at(current + 1, 1, {"M", "N", "L", "W"})) || string_at(current + 1, 1, {"Z"})) {
    add("S", "X");
    return current + (string_at(current + 1, 1, {"Z"}) ? 2 : 1);
  }

  if (string_at(current, 2, {"SC"})) {
    // Schlesinger's rule
    if (at(current + 2) == 'H') {
      // Dutch origin, e.g. "school", "schooner"
      if (string_at(current + 3, 2, {"OO", "ER", "EN", "UY", "ED", "EM"})) {
        // "schermerhorn", "schenker"
        if (string_at(current + 3, 2, {"ER", "EN"})) {
          add("X", "SK");
        } else {
          add("SK");
        }
        return current + 3;
      }
      if (current == 0 && !is_vowel(3) && at(3) != 'W') {
        add("X", "S");
      } else {
        add("X");
      }
      return current + 3;
    }
    if (string_at(current + 2, 1, {"I", "E", "Y"})) {
      add("S");
    } else {
      add("SK");
    }
    return current + 3;
  }

  // French "resnais", "artois"
  if (current == last_ && string_at(current - 2, 2, {"AI", "OI"})) {
    add("", "S");
  } else {
    add("S");
  }
  return current + (string_at(current + 1, 1, {"S", "Z"}) ? 2 : 1);
}

int DoubleMetaphoneEncoder::handle_t(int current) {
  if (string_at(current, 4, {"TION"})) {
    add("X");
    return current + 3;
  }
  if (string_at(current, 3, {"TIA", "TCH"})) {
    add("X");
    return current + 3;
  }
  if (string_at(current, 2, {"TH"}) || string_at(current, 3, {"TTH"})) {
    // "thomas", "thames" or Germanic
    if (string_at(current + 2, 2, {"OM", "AM"}) || string_at(0, 4, {"VAN ", "VON "}) || string_at(0, 3, {"SCH"})) {
      add("T");
    } else {
      add("0", "T");
    }
    return current + 2;
  }
  add("T");
  return current + (string_at(current + 1, 1, {"T", "D"}) ? 2 : 1);
}

int DoubleMetaphoneEncoder::handle_w(int current) {
  // can also be in the middle of a word
  if (string_at(current, 2, {"WR"})) {
    add("R");
    return current + 2;
  }

  if (current == 0 && (is_vowel(current + 1) || string_at(current, 2, {"WH"}))) {
    // "Wasserman" should match "Vasserman"
    if (is_vowel(current + 1)) {
      add("A", "F");
    } else {
      // need Uomo to match Womo
      add("A");
    }
  }

  // "Arnow" should match "Arnoff"
  if ((current == last_ && is_vowel(current - 1)) || string_at(current - 1, 5, {"EWSKI", "EWSKY", "OWSKI", "OWSKY"}) ||
      string_at(0, 3, {"SCH"})) {
    add("", "F");
    return current + 1;
  }

  // Polish "filipowicz"
  if (string_at(current, 4, {"WICZ", "WITZ"})) {
    add("TS", "FX");
    return current + 4;
  }

  return current + 1;
}

}  // namespace

MetaphoneCodes double_metaphone(std::string_view word, std::size_t max_length) {
  return DoubleMetaphoneEncoder(word).encode(max_length);
}

MetaphoneCodes double_metaphone(std::string_view word) {
  return double_metaphone(word, kMetaphoneMaxLength);
}

}  // namespace topicnoise
