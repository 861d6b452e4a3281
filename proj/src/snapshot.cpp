#include "lexsparql/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "lexsparql/error.hpp"
#include "lexsparql/query.hpp"
#include "lexsparql/text.hpp"

namespace lexsparql {

namespace {

std::string term_key(const RdfTerm& t) {
  std::string k(1, t.is_iri() ? 'I' : 'L');
  k += t.value;
  k.push_back('\x1f');
  k += t.language;
  k.push_back('\x1f');
  k += t.datatype;
  return k;
}

template <std::size_t A, std::size_t B, std::size_t C>
Snapshot::Ids permute(const Snapshot::Ids& x) {
  return {x[A], x[B], x[C]};
}

// Range of entries in a sorted index whose first `n` slots equal key.
std::pair<std::vector<Snapshot::Ids>::const_iterator,
          std::vector<Snapshot::Ids>::const_iterator>
prefix_range(const std::vector<Snapshot::Ids>& idx, const Snapshot::Ids& key,
             int n) {
  auto less = [n](const Snapshot::Ids& a, const Snapshot::Ids& b) {
    for (int i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };
  return std::equal_range(idx.begin(), idx.end(), key, less);
}

}  // namespace

TermId Snapshot::intern(const RdfTerm& t) {
  auto [it, fresh] = index_.try_emplace(term_key(t), static_cast<TermId>(terms_.size()));
  if (fresh) terms_.push_back(t);
  return it->second;
}

Snapshot::Snapshot(const std::vector<Triple>& triples) {
  const std::string label = std::string(iri::kRdfs) + "label";
  spo_.reserve(triples.size());
  for (const auto& t : triples) {
    if (!t.subject.is_iri() || !t.predicate.is_iri())
      throw Error(ErrorKind::validation,
                  "snapshot triple with literal subject or predicate: " +
                      t.subject.to_ntriples() + " " + t.predicate.to_ntriples());
    spo_.push_back({intern(t.subject), intern(t.predicate), intern(t.object)});
    if (t.predicate.value == label && t.object.is_literal())
      labels_.try_emplace(t.subject.value + '\t' + t.object.language, t.object.value);
  }
  std::sort(spo_.begin(), spo_.end());
  spo_.erase(std::unique(spo_.begin(), spo_.end()), spo_.end());
  pos_.reserve(spo_.size());
  osp_.reserve(spo_.size());
  for (const auto& x : spo_) {
    pos_.push_back(permute<1, 2, 0>(x));
    osp_.push_back(permute<2, 0, 1>(x));
  }
  std::sort(pos_.begin(), pos_.end());
  std::sort(osp_.begin(), osp_.end());
}

std::optional<TermId> Snapshot::find(const RdfTerm& t) const {
  auto it = index_.find(term_key(t));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Snapshot::match(TermId s, TermId p, TermId o,
                     const std::function<void(TermId, TermId, TermId)>& fn) const {
  const bool bs = s != kNoTerm, bp = p != kNoTerm, bo = o != kNoTerm;
  if (bs) {
    if (bo && !bp) {
      auto [lo, hi] = prefix_range(osp_, {o, s, 0}, 2);
      for (auto it = lo; it != hi; ++it) fn((*it)[1], (*it)[2], (*it)[0]);
      return;
    }
    auto [lo, hi] = prefix_range(spo_, {s, p, o}, bp ? (bo ? 3 : 2) : 1);
    for (auto it = lo; it != hi; ++it) fn((*it)[0], (*it)[1], (*it)[2]);
    return;
  }
  if (bp) {
    auto [lo, hi] = prefix_range(pos_, {p, o, 0}, bo ? 2 : 1);
    for (auto it = lo; it != hi; ++it) fn((*it)[2], (*it)[0], (*it)[1]);
    return;
  }
  if (bo) {
    auto [lo, hi] = prefix_range(osp_, {o, 0, 0}, 1);
    for (auto it = lo; it != hi; ++it) fn((*it)[1], (*it)[2], (*it)[0]);
    return;
  }
  for (const auto& x : spo_) fn(x[0], x[1], x[2]);
}

bool Snapshot::contains(TermId s, TermId p, TermId o) const {
  return std::binary_search(spo_.begin(), spo_.end(), Ids{s, p, o});
}

std::vector<Triple> Snapshot::triples() const {
  std::vector<Triple> out;
  out.reserve(spo_.size());
  for (const auto& x : spo_) out.push_back({terms_[x[0]], terms_[x[1]], terms_[x[2]]});
  return out;
}

std::optional<std::string> Snapshot::label(std::string_view entity_iri,
                                           std::string_view lang) const {
  std::string key(entity_iri);
  key.push_back('\t');
  key += lang;
  auto it = labels_.find(key);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

Snapshot Snapshot::load(std::istream& in, std::string_view source) {
  PrefixMap prefixes = default_prefixes();
  std::vector<Triple> triples;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    return Error(ErrorKind::parse,
                 std::string(source) + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.rfind("@prefix", 0) == 0) {
      auto parts = text::split_ws(body.substr(7));
      if (parts.size() < 2 || parts[0].empty() || parts[0].back() != ':' ||
          parts[1].size() < 2 || parts[1].front() != '<' || parts[1].back() != '>')
        throw fail("malformed @prefix line");
      prefixes[parts[0].substr(0, parts[0].size() - 1)] =
          parts[1].substr(1, parts[1].size() - 2);
      continue;
    }
    auto toks = tokenize(body);
    if (has_lexical_error(toks)) throw fail("lexical error");
    std::size_t i = 0;
    Triple t;
    try {
      RdfTerm* slots[] = {&t.subject, &t.predicate, &t.object};
      for (RdfTerm* slot : slots) {
        if (slot == &t.predicate && i < toks.size() &&
            toks[i].kind == TokenKind::keyword && toks[i].text == "a") {
          *slot = RdfTerm::make_iri(std::string(iri::kRdf) + "type");
          ++i;
          continue;
        }
        if (!read_term(toks, i, prefixes, *slot)) throw fail("term expected");
      }
    } catch (const UnsupportedFeature& e) {
      throw fail(e.what());
    } catch (const Error& e) {
      if (std::string_view(e.what()).rfind(source, 0) == 0) throw;
      throw fail(e.what());
    }
    if (i < toks.size() && toks[i].is(TokenKind::punctuation, ".")) ++i;
    if (i != toks.size()) throw fail("unexpected text after triple");
    if (!t.subject.is_iri() || !t.predicate.is_iri())
      throw fail("subject and predicate must be IRIs");
    triples.push_back(std::move(t));
  }
  return Snapshot(triples);
}

Snapshot Snapshot::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open snapshot file '" + path + "'");
  return load(in, path);
}

}  // namespace lexsparql
