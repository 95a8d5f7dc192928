#include <algorithm>
#include <unordered_map>

#include "omlkit/terms.hpp"

namespace omlkit {

namespace {

std::string names(const std::string& stem, int from, int to) {
  std::string s;
  for (int i = from; i <= to; ++i) {
    if (i > from) s += ", ";
    s += stem + std::to_string(i);
  }
  return s;
}

std::string names_rev(const std::string& stem, int n) {
  std::string s;
  for (int i = n; i >= 1; --i) {
    if (i < n) s += ", ";
    s += stem + std::to_string(i);
  }
  return s;
}

std::string fold(const std::string& op, int n, const std::string& suffix = "") {
  std::string s;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) s += " " + op + " ";
    s += "a" + std::to_string(i) + suffix;
  }
  return s;
}

std::string suffix_n(int n) { return n == 3 ? "" : "@" + std::to_string(n); }

// Replaces each occurrence of the placeholder `name` by `(body)`.
std::string substitute(std::string text, const std::string& name, const std::string& body) {
  std::size_t p = 0;
  while ((p = text.find(name, p)) != std::string::npos) {
    text.replace(p, name.size(), "(" + body + ")");
    p += body.size() + 2;
  }
  return text;
}

// E_1 is the 3OA law in its four-variable form; E_n refines every
// (ai v aj) ^ (bi v bj) factor by the new pair an, bn.
struct ENode {
  enum Kind { pair, meet, join } kind = pair;
  int i = 0, j = 0;
  std::vector<ENode> kids;
};

ENode refine(const ENode& e, int n) {
  if (e.kind == ENode::pair) {
    ENode alt{ENode::join, 0, 0, {ENode{ENode::pair, e.i, n, {}}, ENode{ENode::pair, e.j, n, {}}}};
    return ENode{ENode::meet, 0, 0, {e, alt}};
  }
  ENode out = e;
  for (ENode& k : out.kids) k = refine(k, n);
  return out;
}

std::string etext(const ENode& e) {
  if (e.kind == ENode::pair) {
    std::string i = std::to_string(e.i), j = std::to_string(e.j);
    return "(a" + i + " v a" + j + ") ^ (b" + i + " v b" + j + ")";
  }
  std::string s;
  for (std::size_t k = 0; k < e.kids.size(); ++k) {
    if (k) s += e.kind == ENode::join ? " v " : " ^ ";
    s += "(" + etext(e.kids[k]) + ")";
  }
  return s;
}

std::string e_law(int n) {
  std::string hyps;
  std::string lhs;
  for (int k = 0; k <= n; ++k) {
    if (k) {
      hyps += " & ";
      lhs += " ^ ";
    }
    hyps += "a" + std::to_string(k) + " _|_ b" + std::to_string(k);
    lhs += "(a" + std::to_string(k) + " v b" + std::to_string(k) + ")";
  }
  ENode x{ENode::pair, 0, 1, {}};
  for (int k = 2; k <= n; ++k) x = refine(x, k);
  return hyps + " => " + lhs + " =< b0 v (a0 ^ (a1 v (" + etext(x) + ")))";
}

class Builder {
 public:
  void add(std::string id, std::string text, std::string provenance, std::string note) {
    RegistryEntry e;
    e.id = std::move(id);
    e.statement = parse_statement(text);
    e.text = to_string(e.statement);
    e.provenance = std::move(provenance);
    e.note = std::move(note);
    out.push_back(std::move(e));
  }
  // Both directions of a biconditional: `id` is left to right, `id.rl` the converse.
  void add_iff(const std::string& id, const std::string& lhs, const std::string& rhs, const std::string& provenance,
               const std::string& note) {
    add(id, lhs + " => " + rhs, provenance, note);
    add(id + ".rl", rhs + " => " + lhs, provenance, note + " (converse)");
  }
  std::vector<RegistryEntry> out;
};

std::vector<RegistryEntry> build() {
  Builder b;
  const std::string om = "orthomodularity equivalents";
  for (int i = 1; i <= 5; ++i) {
    std::string s = std::to_string(i);
    b.add("qm-as-id." + s, "a ==" + s + " b = 1 => a = b", om, "equivalent to OML");
  }
  for (int i = 1; i <= 5; ++i) {
    std::string s = std::to_string(i);
    b.add_iff("oml-le." + s, "a ->" + s + " b = 1", "a =< b", om, "equivalent to OML");
  }
  for (int i = 1; i <= 5; ++i) {
    std::string s = std::to_string(i);
    b.add("equiv-impl." + s, "(a ->" + s + " b) ^ (b ->" + s + " a) = a == b", om, "holds in all OML");
  }
  b.add("equiv5", "a == b = a ==5 b", om, "holds in all OML and in O6");
  b.add_iff("commut", "a = (a ^ b) v (a ^ b')", "a ^ (a' v b) =< b", om, "equivalent to OML");
  b.add("om-alt", "(a == b) ^ (b == c) =< a == c", om, "equivalent to OML");
  b.add("om-alte", "(a == b) ^ (b == c) = (a == b) ^ (a == c)", om, "equivalent to OML");
  const std::string open = "open problem";
  b.add("om-alt-v", "(a == b) ^ ((b == c) v (a == c)) =< a == c", open, "open - scan only");
  b.add("woml2", "(a == b) ->0 ((a == c) == (b == c)) = 1", open, "open - scan only");
  b.add("id-distr", "(a == b) ^ ((b == c) v (a == c)) = ((a == b) ^ (b == c)) v ((a == b) ^ (a == c))", open,
        "open - scan only");

  const std::string go = "Godowski equations";
  for (int n = 3; n <= 9; ++n) {
    b.add("n-go." + std::to_string(n), "gamma(" + names("a", 1, n) + ") = gamma(" + names_rev("a", n) + ")", go,
          "defines " + std::to_string(n) + "GO");
  }
  for (int n = 3; n <= 6; ++n) {
    const std::string sfx = suffix_n(n);
    const std::string g = "gamma(" + names("a", 1, n) + ")";
    const std::string d = "delta(" + names("a", 1, n) + ")";
    const std::string an = "a" + std::to_string(n);
    const std::string var = std::to_string(n) + "GO";
    const std::string defines = "equivalent to " + var;
    b.add("godow2" + sfx, d + " = delta(" + names_rev("a", n) + ")", go, defines);
    b.add("godow1c" + sfx, g + " = chain==(" + names("a", 1, n) + ")", go, defines);
    b.add("godow2c" + sfx, d + " = chain==(" + names("a", 1, n) + ")", go, defines);
    for (int i : {1, 2, 3, 5}) b.add("godow1d." + std::to_string(i) + sfx, g + " =< a1 ->" + std::to_string(i) + " " + an, go, defines);
    for (int i : {1, 2, 4, 5}) b.add("godow2d." + std::to_string(i) + sfx, d + " =< a1 ->" + std::to_string(i) + " " + an, go, defines);
    b.add("godow1e" + sfx, g + " ^ (" + fold("v", n) + ") = " + fold("^", n), go, defines);
    b.add("godow2e" + sfx, d + " ^ (" + fold("v", n, "'") + ") = " + fold("^", n, "'"), go, defines);
    for (int i = 0; i <= 5; ++i) {
      b.add("godow1d2." + std::to_string(i) + sfx, g + " =< a2 ->" + std::to_string(i) + " a1", go, "holds in " + var);
      b.add("godow2d2." + std::to_string(i) + sfx, d + " =< a2 ->" + std::to_string(i) + " a1", go, "holds in " + var);
    }
    b.add("godowf" + sfx, g + " = " + d, go, "holds in " + var);
    b.add("goswap" + sfx, g + " ^ a2' = " + fold("^", n, "'"), go, "holds in all OML");
    b.add("goswap2" + sfx, g + " ^ a1' = " + g + " ^ " + an + "'", go, "holds in all OML");
  }
  for (int n = 2; n <= 6; ++n) {
    b.add("god-prelemma3a" + suffix_n(n),
          "chain==(" + names("a", 1, n) + ") = (" + fold("^", n) + ") v (" + fold("^", n, "'") + ")", go,
          "holds in all OML");
  }
  for (int i : {2, 3, 4, 5}) b.add("godow3a." + std::to_string(i), "gamma(a1, a2, a3) =< a3 ->" + std::to_string(i) + " a1", go, "equivalent to 3GO (n=3 only)");
  for (int i : {1, 3, 4, 5}) b.add("godow3b." + std::to_string(i), "delta(a1, a2, a3) =< a3 ->" + std::to_string(i) + " a1", go, "equivalent to 3GO (n=3 only)");
  b.add("godow3c", "gamma(a1, a2, a3) = delta(a1, a2, a3)", go, "equivalent to 3GO (n=3 only)");
  b.add("god-prelemma3b", "(a ->2 b) ^ (b ->1 c) = (a' ^ b') v (b ^ c)", go, "holds in all OML");
  b.add("god-prelemma3c", "(a1 ->5 a2) ^ (a2 ->5 a3) ^ (a3 ->5 a1) = (a1 == a2) ^ (a2 == a3)", go, "holds in all OML");
  for (int mask = 0; mask < 8; ++mask) {
    int j1 = (mask & 4) ? 2 : 1, j2 = (mask & 2) ? 2 : 1, j3 = (mask & 1) ? 2 : 1;
    std::string tag = std::to_string(j1) + std::to_string(j2) + std::to_string(j3);
    b.add("god-th4." + tag,
          "(a1 ->" + std::to_string(j1) + " a2) ^ (a2 ->" + std::to_string(j2) + " a3) ^ (a3 ->" + std::to_string(j3) +
              " a1) = gamma(a1, a2, a3)",
          go, "holds in 4GO");
  }
  b.add("th4a", "(a ->1 (a v b)) ^ ((a v b) ->1 b) = a ->2 b", go, "holds in all OML");
  b.add("th4b", "(a ->2 (a ^ b)) ^ ((a ^ b) ->2 b) = a ->1 b", go, "holds in all OML");
  b.add("god-alt-v1", "(a ->1 b) ^ (b ->2 c) ^ (c ->1 a) =< a == c", go, "holds in 4GO");
  b.add("god-alt-v2", "(a == b) ^ ((b' ^ c') v (a ^ c)) =< a == c", open, "open - scan only");
  for (int i : {3, 4, 5}) {
    std::string s = std::to_string(i);
    b.add("tri-to" + s, "(a1 ->" + s + " a2) ^ (a2 ->" + s + " a3) ^ (a3 ->" + s + " a1) =< a2 ->" + s + " a1", go,
          i == 5 ? "holds in all OML" : "fails in MO2");
  }
  b.add("govar", "a _|_ b & b _|_ c => (a v b) ^ (a ->2 c) =< b v c", go, "holds in all OML");
  b.add("govar2", "a _|_ b & b _|_ c => a v b =< c ->2 a", go, "holds in all OML");
  b.add("gon2n", "a _|_ b & b _|_ c & (c ->2 a) ^ d =< a ->2 c => (a v b) ^ d =< b v c", go, "holds in all OML");
  for (int n = 3; n <= 6; ++n) {
    std::string hyps;
    std::string lhs;
    for (int k = 1; k <= n; ++k) {
      std::string ak = "a" + std::to_string(k), bk = "b" + std::to_string(k);
      std::string next = "a" + std::to_string(k % n + 1);
      if (k > 1) {
        hyps += " & ";
        lhs += " ^ ";
      }
      hyps += ak + " _|_ " + bk + " & " + bk + " _|_ " + next;
      lhs += "(" + ak + " v " + bk + ")";
    }
    b.add("go2n." + std::to_string(n), hyps + " => " + lhs + " =< b1 v a2", go,
          "equivalent to " + std::to_string(n) + "GO");
  }
  b.add("mayet2", "(a ->1 b) ^ (b ->1 c) ^ (c ->1 a) =< b ->1 a", go, "holds in 3GO");
  b.add("mayet3",
        "a _|_ b & b _|_ c & c _|_ d & d _|_ e & e _|_ f & f _|_ a => "
        "(a v b) ^ (d v e)' ^ (((((a v b) ->1 (d v e)') ->1 ((e v f) ->1 (b v c)')')') ->1 (c v d)) "
        "=< b v c v (e v f)'",
        go, "holds in 6GO");
  b.add("mayet4",
        "a _|_ b & b _|_ c & c _|_ d & d _|_ e & e _|_ f & f _|_ g & g _|_ h & h _|_ a => "
        "(a v b) ^ (c v d) ^ (e v f) ^ (g v h) ^ ((a v h) ->1 (d v e)') = 0",
        go, "holds in 4GO");
  b.add("new3go",
        "((a ->2 b) ^ (a ->2 c)') ^ (((((a ->2 b) ->1 (a ->2 c)') ->1 ((b ->2 c) ->1 (b ->2 a)')')') ->1 (c ->2 a)) "
        "=< b ->2 a",
        go, "holds in 6GO; independent of 3GO");
  b.add("god-trans", "gamma(a1, a2, a3) ^ gamma(a3, a4, a5) =< gamma(a1, a2, a3, a4, a5)", go, "holds in 5GO");
  b.add("god-trans.2.3", "gamma(a1, a2) ^ gamma(a2, a3) =< gamma(a1, a2, a3)", go, "holds in 3GO");
  b.add("god-trans.3.4", "gamma(a1, a2, a3) ^ gamma(a3, a4) =< gamma(a1, a2, a3, a4)", go, "holds in 4GO");

  const std::string oa = "orthoarguesian equations";
  for (int i : {1, 3}) {
    std::string s = std::to_string(i);
    b.add_iff("id/c1." + s, "ceq" + s + "(a, b; c) = 1", "a ->" + s + " c = b ->" + s + " c", oa, "fails in L28");
    b.add_iff("id/cd." + s, "cdeq" + s + "(a, b; c, d) = 1", "a ->" + s + " d = b ->" + s + " d", oa, "fails in L36");
  }
  for (int i : {2, 4}) {
    std::string s = std::to_string(i);
    b.add_iff("id/c." + s, "ceq" + s + "(a, b; c) = 1", "c ->" + s + " a = c ->" + s + " b", oa, "fails in L28");
  }
  b.add("3oa", "(a ->1 c) ^ ceq(a, b; c) =< b ->1 c", oa, "defines 3OA");
  b.add("4oa", "(a ->1 d) ^ cdeq(a, b; c, d) =< b ->1 d", oa, "defines 4OA");
  b.add("oalem1", "(a ->1 b) ^ a = a ^ b", oa, "holds in all OML");
  b.add("oalem2", "(a ->1 b) ^ (a' ->1 b) = (a ^ b) v (a' ^ b)", oa, "holds in all OML");
  b.add("oalem2.b", "(a ->1 b) ^ b = (a ^ b) v (a' ^ b)", oa, "holds in all OML");
  b.add("oalem3", "(a' ->1 b)' =< a'", oa, "holds in all OML");
  b.add("oalem3.b", "a' =< a ->1 b", oa, "holds in all OML");
  b.add("oalem4", "(a ->1 b) ->1 b = a' ->1 b", oa, "holds in all OML");
  b.add("oalem5", "(a ->1 b)' ->1 b = a ->1 b", oa, "holds in all OML");
  for (int i = 0; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      std::string si = std::to_string(i), sj = std::to_string(j);
      b.add("oalem6." + si + sj, "(a ->" + si + " b) v (a ->" + sj + " b) = a ->0 b", oa, "holds in all OML");
    }
  }
  b.add("oalem8", "a' =< b => b =< a ->1 b", oa, "holds in all OML");
  b.add_iff("oalem9", "a ^ ((a ->1 c) v b) =< c", "b =< a ->1 c", oa, "holds in all OML");
  b.add("6oa",
        "a _|_ b & c _|_ d & e _|_ f => (a v b) ^ (c v d) ^ (e v f) =< "
        "b v (a ^ (c v (((a v c) ^ (b v d)) ^ (((a v e) ^ (b v f)) v ((c v e) ^ (d v f))))))",
        oa, "equivalent to 4OA");
  const std::string alpha = "(b v c) ^ (sasaki(b', a) v sasaki(c', a))";
  b.add("go-gr3oa", substitute("sasaki(b', a) v ALPHA = sasaki(c', a) v ALPHA", "ALPHA", alpha), oa,
        "equivalent to 3OA");
  b.add("4oa-go-gr", "a _|_ b & c _|_ d => (a v b) ^ (c v d) =< b v (a ^ (c v ((a v c) ^ (b v d))))", oa,
        "equivalent to 3OA");
  b.add_iff("id1/c", "ceq(a, b; c) = 1", "a ->1 c = b ->1 c", oa, "holds in 3OA");
  b.add_iff("id1/cd", "cdeq(a, b; c, d) = 1", "a ->1 d = b ->1 d", oa, "holds in 4OA");
  b.add("tr1/c", "ceq(a, b; d) = 1 & ceq(b, c; d) = 1 => ceq(a, c; d) = 1", oa, "holds in 3OA");
  b.add("tr1/cd", "cdeq(a, b; d, e) = 1 & cdeq(b, c; d, e) = 1 => cdeq(a, c; d, e) = 1", oa, "holds in 4OA");
  b.add("new3oa", "(a ->1 d) ^ cdeq(a, a'; c, d) =< a' ->1 d", oa, "holds in 4OA; independent of 3OA");
  b.add("weak4oa",
        "a ^ ((a ^ b) v (((a ^ c) v (a' ^ (c ->1 d))) ^ ((b ^ c) v ((b ->1 d) ^ c')))) =< b' ->1 d", oa,
        "holds in 4OA; strictly weaker");
  for (int n = 3; n <= 6; ++n) {
    std::string sn = std::to_string(n);
    std::string o = "oan(" + sn + "; " + names("a", 1, n) + ")";
    b.add("noa." + sn, "(a1 ->1 a3) ^ " + o + " =< a2 ->1 a3", oa, "defines " + sn + "OA");
    b.add_iff("noae." + sn, o + " = 1", "a1 ->1 a3 = a2 ->1 a3", oa, "holds in " + sn + "OA");
  }
  for (int n = 1; n <= 4; ++n) {
    b.add("E." + std::to_string(n), e_law(n), oa, n == 1 ? "equivalent to 3OA" : "equivalent to " + std::to_string(n + 2) + "OA");
  }

  const std::string dist = "distributive laws";
  b.add("omldistr1", "a C d & b C d & b ^ d =< c & c =< d => a ^ (b v c) = (a ^ b) v (a ^ c)", dist,
        "holds in all OML");
  b.add("omldistr2", "a C d & b C d & b ^ d =< c & c =< d => b ^ (a v c) = (b ^ a) v (b ^ c)", dist,
        "holds in all OML");
  b.add("omldistr3", "a C d & c =< d & d =< b' => c ^ (a v b) = (c ^ a) v (c ^ b)", dist, "holds in all OML");
  const std::string gh = "chain==(a1, a2, a3) =< a & a =< chain->(a1, a2, a3) & ";
  b.add("godistr1",
        gh + "b C (a1 ^ a3) & b ^ (a1 ^ a3) =< c & c =< a1 ^ a3 & b v c =< a3 ->1 a1 => a ^ (b v c) = (a ^ b) v (a ^ c)",
        dist, "equivalent to 3GO");
  b.add("godistr2",
        gh + "b C (a1 ^ a3) & b ^ (a1 ^ a3) =< c & c =< a1 ^ a3 & b v c =< a3 ->1 a1 => b ^ (a v c) = (b ^ a) v (b ^ c)",
        dist, "equivalent to 3GO");
  b.add("godistr3", gh + "c =< a3' & a3' =< b' & b v c =< a3 ->1 a1 => c ^ (a v b) = (c ^ a) v (c ^ b)", dist,
        "equivalent to 3GO");
  b.add("oalem12", "(a ->1 c) ^ ((a ->1 c) ^ (b ->1 c))' ^ (a' ->1 c) ^ (b' ->1 c) = 0", dist, "holds in all OML");
  for (int i : {1, 2}) {
    b.add("oalem13." + std::to_string(i),
          "(a ->1 c) ^ (((a ->1 c) ^ (b ->1 c))' ->" + std::to_string(i) + " ((a' ->1 c) ^ (b' ->1 c))) =< b ->1 c",
          dist, "holds in all OML");
  }
  b.add("dist3oa", "d =< a ->1 c & d ^ (b ->1 c) =< e & e v f =< ceq(a, b; c) => d ^ (e v f) = (d ^ e) v (d ^ f)",
        dist, "equivalent to 3OA");
  b.add("dist4oa",
        "e =< a ->1 d & e ^ (b ->1 d) =< f & f v g =< cdeq(a, b; c, d) => e ^ (f v g) = (e ^ f) v (e ^ g)", dist,
        "equivalent to 4OA");
  return std::move(b.out);
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = build();
  return entries;
}

const RegistryEntry* find_entry(std::string_view id) {
  static const std::unordered_map<std::string_view, const RegistryEntry*> index = [] {
    std::unordered_map<std::string_view, const RegistryEntry*> m;
    for (const RegistryEntry& e : registry()) m.emplace(e.id, &e);
    return m;
  }();
  auto it = index.find(id);
  return it == index.end() ? nullptr : it->second;
}

std::string registry_catalogue() {
  std::string out;
  for (const RegistryEntry& e : registry()) {
    out += e.id + '\t' + e.text + '\t' + e.provenance + '\t' + e.note + '\n';
  }
  return out;
}

}  // namespace omlkit
