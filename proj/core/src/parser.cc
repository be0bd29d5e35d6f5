#include "tutorsynth/parser.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace tutorsynth {
namespace {

constexpr std::array<std::string_view, 6> kTapVerbs = {
    "tap", "click", "press", "select", "choose", "touch"};
constexpr std::array<std::string_view, 7> kFillers = {
    "your", "device's", "device", "the", "app", "button", "option"};
constexpr std::array<std::string_view, 3> kUnsupported = {"if", "otherwise",
                                                          "repeat"};
// A verb-less sentence starting with one of these is prose, not a UI label.
constexpr std::array<std::string_view, 7> kProseOpeners = {
    "you", "it", "this", "that", "there", "now", "then"};
constexpr std::size_t kMaxNounTokens = 4;

template <std::size_t N>
bool In(const std::array<std::string_view, N>& set, std::string_view word) {
  return std::find(set.begin(), set.end(), word) != set.end();
}

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Span Trim(std::string_view text, Span span, bool strip_terminators) {
  while (span.start < span.end && IsSpace(text[span.start])) ++span.start;
  while (span.end > span.start &&
         (IsSpace(text[span.end - 1]) ||
          (strip_terminators && IsTerminator(text[span.end - 1]))))
    --span.end;
  return span;
}

std::vector<Token> TokenizeAt(std::string_view text, Span span) {
  auto tokens = Tokenize(text.substr(span.start, span.size()));
  for (auto& t : tokens) {
    t.span.start += span.start;
    t.span.end += span.start;
  }
  return tokens;
}

// Drops filler words; "apps" only when trailing. Falls back to the
// unfiltered phrase if nothing would remain.
std::vector<Token> FilterTarget(const std::vector<Token>& tokens,
                                bool drop_application = false) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& word = tokens[i].text;
    if (In(kFillers, word)) continue;
    if (word == "apps" && i + 1 == tokens.size()) continue;
    if (drop_application && word == "application") continue;
    out.push_back(tokens[i]);
  }
  return out.empty() ? tokens : out;
}

struct Reading {
  std::vector<ActionTuple> tuples;
  double score = 0.0;
};

struct SentenceAnalysis {
  // options[0] is the primary (greedy) reading. Empty when the sentence
  // carries no action in any reading.
  std::vector<Reading> options;
  bool unsupported = false;
  bool has_verb_action = false;
};

ActionTuple MakeTuple(ActionKind kind, std::vector<Token> target, Span span,
                      double score) {
  return ActionTuple{kind, std::move(target), span, score};
}

SentenceAnalysis AnalyzeTapClause(std::string_view text, Span sentence,
                                  const Token& verb) {
  SentenceAnalysis out;
  Span rest = Trim(text, Span{verb.span.end, sentence.end}, true);

  // Split the remainder on '>' into chain segments.
  std::vector<Span> segments;
  std::size_t seg_start = rest.start;
  for (std::size_t i = rest.start; i <= rest.end; ++i) {
    if (i == rest.end || text[i] == '>') {
      Span seg = Trim(text, Span{seg_start, i}, false);
      if (!TokenizeAt(text, seg).empty()) segments.push_back(seg);
      seg_start = i + 1;
    }
  }
  if (segments.empty()) return out;

  out.has_verb_action = true;
  if (segments.size() == 1) {
    out.options.push_back(Reading{
        {MakeTuple(ActionKind::kTap, FilterTarget(TokenizeAt(text, segments[0])),
                   sentence, kVerbTupleScore)},
        kVerbTupleScore});
    return out;
  }

  Reading expanded;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    Span span = segments[i];
    if (i == 0) span.start = sentence.start;
    double score = i == 0 ? kVerbTupleScore : kChainTupleScore;
    expanded.tuples.push_back(MakeTuple(
        ActionKind::kTap, FilterTarget(TokenizeAt(text, segments[i])), span,
        score));
    expanded.score += score;
  }
  Reading final_only{
      {MakeTuple(ActionKind::kTap,
                 FilterTarget(TokenizeAt(text, segments.back())), sentence,
                 kVerbTupleScore)},
      kVerbTupleScore};
  out.options.push_back(std::move(expanded));
  out.options.push_back(std::move(final_only));
  return out;
}

SentenceAnalysis AnalyzeSentence(std::string_view text, Span sentence) {
  SentenceAnalysis out;
  auto tokens = TokenizeAt(text, sentence);
  if (tokens.empty()) return out;
  for (const auto& t : tokens) {
    if (In(kUnsupported, t.text)) {
      out.unsupported = true;
      return out;
    }
  }

  const std::string& verb = tokens.front().text;
  if (In(kTapVerbs, verb)) return AnalyzeTapClause(text, sentence, tokens.front());

  if (verb == "open" && tokens.size() > 1) {
    const std::string& last = tokens.back().text;
    if (last == "app" || last == "application") {
      std::vector<Token> rest(tokens.begin() + 1, tokens.end());
      out.has_verb_action = true;
      out.options.push_back(Reading{
          {MakeTuple(ActionKind::kOpenApp, FilterTarget(rest, true), sentence,
                     kVerbTupleScore)},
          kVerbTupleScore});
      return out;
    }
    return AnalyzeTapClause(text, sentence, tokens.front());
  }

  if (verb == "turn" && tokens.size() > 2) {
    std::optional<ActionKind> kind;
    std::vector<Token> target;
    const std::string& second = tokens[1].text;
    const std::string& last = tokens.back().text;
    if (second == "on" || second == "off") {
      kind = second == "on" ? ActionKind::kToggleOn : ActionKind::kToggleOff;
      target.assign(tokens.begin() + 2, tokens.end());
    } else if (last == "on" || last == "off") {
      kind = last == "on" ? ActionKind::kToggleOn : ActionKind::kToggleOff;
      target.assign(tokens.begin() + 1, tokens.end() - 1);
    }
    if (kind && !target.empty()) {
      out.has_verb_action = true;
      out.options.push_back(Reading{
          {MakeTuple(*kind, FilterTarget(target), sentence, kVerbTupleScore)},
          kVerbTupleScore});
    }
    return out;
  }

  // Verb-less sentence: a short noun phrase may be an elided tap.
  auto target = FilterTarget(tokens);
  if (target.size() <= kMaxNounTokens && !In(kProseOpeners, verb)) {
    out.options.push_back(Reading{{}, kNounCommentaryScore});
    out.options.push_back(Reading{
        {MakeTuple(ActionKind::kTap, std::move(target), sentence,
                   kNounTapScore)},
        kNounTapScore});
  }
  return out;
}

struct Hypothesis {
  std::vector<int> choices;
  double score = 0.0;
};

bool HypothesisBefore(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.choices < b.choices;
}

}  // namespace

std::string_view ActionKindName(ActionKind kind) {
  switch (kind) {
    case ActionKind::kOpenApp: return "open_app";
    case ActionKind::kTap: return "tap";
    case ActionKind::kToggleOn: return "toggle_on";
    case ActionKind::kToggleOff: return "toggle_off";
  }
  return "tap";
}

std::optional<ActionKind> ActionKindFromName(std::string_view name) {
  if (name == "open_app") return ActionKind::kOpenApp;
  if (name == "tap") return ActionKind::kTap;
  if (name == "toggle_on") return ActionKind::kToggleOn;
  if (name == "toggle_off") return ActionKind::kToggleOff;
  return std::nullopt;
}

std::vector<Span> SplitSentences(std::string_view text) {
  std::vector<Span> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (IsTerminator(text[i])) {
      while (i < text.size() && IsTerminator(text[i])) ++i;
      Span s = Trim(text, Span{start, i}, false);
      if (!TokenizeAt(text, s).empty()) out.push_back(s);
      start = i;
    } else {
      ++i;
    }
  }
  Span tail = Trim(text, Span{start, text.size()}, false);
  if (!TokenizeAt(text, tail).empty()) out.push_back(tail);
  return out;
}

ParseResult Parse(std::string_view text, int k) {
  if (k < 1) throw std::invalid_argument("beam count k must be >= 1");

  ParseResult result;
  auto sentences = SplitSentences(text);
  std::vector<SentenceAnalysis> analyses;
  analyses.reserve(sentences.size());
  bool any_action = false;
  std::optional<std::size_t> first_unparsable;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto analysis = AnalyzeSentence(text, sentences[i]);
    if (analysis.unsupported) {
      std::ostringstream msg;
      msg << "unsupported conditional or loop construct in sentence "
          << i + 1 << ": \""
          << text.substr(sentences[i].start, sentences[i].size()) << "\"";
      result.diagnostic = msg.str();
      return result;
    }
    if (analysis.has_verb_action) {
      any_action = true;
    } else if (!first_unparsable) {
      first_unparsable = i;
    }
    analyses.push_back(std::move(analysis));
  }

  if (!any_action) {
    std::ostringstream msg;
    if (sentences.empty()) {
      msg << "no action found: instruction is empty";
    } else {
      const Span& s = sentences[first_unparsable.value_or(0)];
      msg << "no action found in sentence " << first_unparsable.value_or(0) + 1
          << ": \"" << text.substr(s.start, s.size()) << "\"";
    }
    result.diagnostic = msg.str();
    return result;
  }

  // Sentence readings are independent and scores additive, so keeping the
  // top k prefixes at every sentence yields the exact top k sequences.
  std::vector<Hypothesis> frontier{Hypothesis{}};
  for (const auto& analysis : analyses) {
    if (analysis.options.empty()) continue;
    std::vector<Hypothesis> next;
    next.reserve(frontier.size() * analysis.options.size());
    for (const auto& hyp : frontier) {
      for (std::size_t o = 0; o < analysis.options.size(); ++o) {
        Hypothesis h = hyp;
        h.choices.push_back(static_cast<int>(o));
        h.score += analysis.options[o].score;
        next.push_back(std::move(h));
      }
    }
    std::sort(next.begin(), next.end(), HypothesisBefore);
    if (next.size() > static_cast<std::size_t>(k)) next.resize(k);
    frontier = std::move(next);
  }

  for (const auto& hyp : frontier) {
    ParseBeam beam;
    beam.score = hyp.score;
    std::size_t c = 0;
    for (const auto& analysis : analyses) {
      if (analysis.options.empty()) continue;
      const auto& reading = analysis.options[hyp.choices[c++]];
      beam.tuples.insert(beam.tuples.end(), reading.tuples.begin(),
                         reading.tuples.end());
    }
    result.beams.push_back(std::move(beam));
  }
  return result;
}

SegmentedInstruction Segment(std::string_view text, const ParseBeam& beam) {
  auto sentences = SplitSentences(text);

  std::vector<std::size_t> sentence_of(beam.tuples.size());
  for (std::size_t i = 0; i < beam.tuples.size(); ++i) {
    const Span& span = beam.tuples[i].source_span;
    if (span.start >= span.end || span.end > text.size())
      throw MisalignedBeam("tuple " + std::to_string(i) +
                           " span lies outside the instruction text");
    auto it = std::find_if(sentences.begin(), sentences.end(),
                           [&](const Span& s) { return s.Contains(span); });
    if (it == sentences.end())
      throw MisalignedBeam("tuple " + std::to_string(i) +
                           " span does not fall within a sentence");
    sentence_of[i] = static_cast<std::size_t>(it - sentences.begin());
  }

  SegmentedInstruction out;
  for (std::size_t i = 0; i < beam.tuples.size(); ++i)
    out.steps.push_back(SegmentStep{{}, beam.tuples[i].source_span, i});
  if (out.steps.empty()) return out;

  for (std::size_t s = 0; s < sentences.size(); ++s) {
    bool claimed = std::find(sentence_of.begin(), sentence_of.end(), s) !=
                   sentence_of.end();
    if (claimed) continue;
    // Attach to the last tuple of the nearest preceding sentence.
    std::optional<std::size_t> owner;
    for (std::size_t i = 0; i < sentence_of.size(); ++i)
      if (sentence_of[i] < s) owner = i;
    if (owner) {
      out.steps[*owner].span.end =
          std::max(out.steps[*owner].span.end, sentences[s].end);
    } else {
      out.steps.front().span.start =
          std::min(out.steps.front().span.start, sentences[s].start);
    }
  }
  for (auto& step : out.steps)
    step.text = std::string(text.substr(step.span.start, step.span.size()));
  return out;
}

nlohmann::ordered_json ParseResultToJson(const ParseResult& result) {
  nlohmann::ordered_json beams = nlohmann::ordered_json::array();
  for (const auto& beam : result.beams) {
    nlohmann::ordered_json tuples = nlohmann::ordered_json::array();
    for (const auto& t : beam.tuples) {
      tuples.push_back({{"kind", ActionKindName(t.kind)},
                        {"target", t.TargetText()},
                        {"span", {t.source_span.start, t.source_span.end}}});
    }
    beams.push_back({{"score", beam.score}, {"tuples", std::move(tuples)}});
  }
  nlohmann::ordered_json out;
  out["beams"] = std::move(beams);
  if (result.diagnostic) out["diagnostic"] = *result.diagnostic;
  return out;
}

}  // namespace tutorsynth
