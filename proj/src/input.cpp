#include "laurentia/input.hpp"

#include <toml.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace laurentia {

InputError::InputError(const std::string& what, int line, int column)
    : std::runtime_error(line ? std::to_string(line) + ":" + std::to_string(column) + ": " + what : what),
      line(line),
      column(column) {}

namespace {

[[noreturn]] void fail_at(const toml::node& n, const std::string& what) {
  const auto& b = n.source().begin;
  throw InputError(what, static_cast<int>(b.line), static_cast<int>(b.column));
}

[[noreturn]] void fail_at(const toml::node_view<const toml::node>& v, const toml::node& parent, const std::string& what) {
  if (v) fail_at(*v.node(), what);
  fail_at(parent, what);
}

const toml::table& need_table(const toml::table& root, const std::string& key) {
  const toml::table* t = root[key].as_table();
  if (!t) throw InputError("missing section [" + key + "]", 1, 1);
  return *t;
}

std::string need_string(const toml::node& n, const std::string& what) {
  if (auto s = n.value<std::string>()) return *s;
  fail_at(n, what + " must be a string");
}

std::string need_string(const toml::table& t, const std::string& key, const std::string& what) {
  auto v = t[key];
  if (!v) fail_at(t, what + ": missing key '" + key + "'");
  return need_string(*v.node(), what + "." + key);
}

int need_int(const toml::node& n, const std::string& what) {
  if (auto i = n.value<int64_t>()) return static_cast<int>(*i);
  fail_at(n, what + " must be an integer");
}

const toml::array& need_array(const toml::node& n, const std::string& what) {
  if (const auto* a = n.as_array()) return *a;
  fail_at(n, what + " must be an array");
}

std::vector<std::string> string_list(const toml::node& n, const std::string& what) {
  std::vector<std::string> out;
  for (const auto& e : need_array(n, what)) out.push_back(need_string(e, what + " entry"));
  return out;
}

Rational coefficient(const toml::node& n) {
  if (auto i = n.value<int64_t>()) return Rational(*i);
  if (auto s = n.value<std::string>()) {
    try {
      return Rational(*s);
    } catch (const std::exception&) {
      fail_at(n, "invalid coefficient '" + *s + "'");
    }
  }
  fail_at(n, "coefficient must be an integer or a string such as \"1/2\"");
}

// A basis combination: a single name, or [[coeff, name], ...].
SparseVec combination(const toml::node& n, const std::map<std::string, int>& names) {
  auto lookup = [&](const toml::node& at, const std::string& s) {
    auto it = names.find(s);
    if (it == names.end()) fail_at(at, "unknown basis element '" + s + "'");
    return it->second;
  };
  SparseVec v;
  if (auto s = n.value<std::string>()) {
    v.emplace_back(lookup(n, *s), Rational(1));
    return v;
  }
  for (const auto& term : need_array(n, "combination")) {
    const auto& pair = need_array(term, "combination term");
    if (pair.size() != 2) fail_at(term, "combination term must be [coefficient, name]");
    v.emplace_back(lookup(*pair.get(1), need_string(*pair.get(1), "basis name")), coefficient(*pair.get(0)));
  }
  return v;
}

QuiverPresentation parse_quiver(const toml::table& alg) {
  QuiverPresentation q;
  auto vs = alg["vertices"];
  if (!vs) fail_at(alg, "quiver mode needs 'vertices'");
  q.vertices = string_list(*vs.node(), "vertices");
  if (q.vertices.empty()) fail_at(*vs.node(), "the vertex set must be nonempty");
  std::set<std::string> vset(q.vertices.begin(), q.vertices.end());
  if (vset.size() != q.vertices.size()) fail_at(*vs.node(), "duplicate vertex name");

  std::map<std::string, int> arrow_degree;
  if (auto as = alg["arrows"]) {
    for (const auto& e : need_array(*as.node(), "arrows")) {
      const auto* t = e.as_table();
      if (!t) fail_at(e, "an arrow must be an inline table {name, src, dst, degree}");
      Arrow a;
      a.name = need_string(*t, "name", "arrow");
      a.src = need_string(*t, "src", "arrow");
      a.dst = need_string(*t, "dst", "arrow");
      auto d = (*t)["degree"];
      a.degree = d ? need_int(*d.node(), "arrow degree") : 1;
      if (!vset.count(a.src)) fail_at(*(*t)["src"].node(), "unknown vertex '" + a.src + "'");
      if (!vset.count(a.dst)) fail_at(*(*t)["dst"].node(), "unknown vertex '" + a.dst + "'");
      if (arrow_degree.count(a.name) || vset.count(a.name)) fail_at(e, "duplicate arrow name '" + a.name + "'");
      arrow_degree[a.name] = a.degree;
      q.arrows.push_back(a);
    }
  }
  if (auto rs = alg["relations"]) {
    for (const auto& e : need_array(*rs.node(), "relations")) {
      std::string text = need_string(e, "relation");
      Relation r;
      try {
        r = parse_relation(text);
      } catch (const AlgebraError& err) {
        fail_at(e, err.what());
      }
      std::optional<int> deg;
      for (const auto& term : r.terms) {
        int d = 0;
        for (const auto& a : term.arrows) {
          auto it = arrow_degree.find(a);
          if (it == arrow_degree.end()) fail_at(e, "unknown arrow '" + a + "' in relation '" + text + "'");
          d += it->second;
        }
        if (deg && *deg != d)
          fail_at(e, "relation '" + text + "' mixes degrees " + std::to_string(*deg) + " and " + std::to_string(d));
        deg = d;
      }
      q.relations.push_back(std::move(r));
    }
  }
  return q;
}

TableAlgebra parse_table(const toml::table& alg, std::map<std::string, int>& names) {
  TableAlgebra t;
  auto bs = alg["basis"];
  if (!bs) fail_at(alg, "table mode needs 'basis'");
  struct Pending {
    const toml::table* node;
    std::string left, right;
  };
  std::vector<Pending> pending;
  for (const auto& e : need_array(*bs.node(), "basis")) {
    const auto* b = e.as_table();
    if (!b) fail_at(e, "a basis element must be an inline table {name, degree, left, right}");
    TableBasisElem el;
    el.name = need_string(*b, "name", "basis element");
    auto d = (*b)["degree"];
    el.degree = d ? need_int(*d.node(), "degree") : 0;
    if (names.count(el.name)) fail_at(e, "duplicate basis element '" + el.name + "'");
    names[el.name] = static_cast<int>(t.basis.size());
    pending.push_back({b, need_string(*b, "left", "basis element"), need_string(*b, "right", "basis element")});
    t.basis.push_back(el);
  }
  if (t.basis.empty()) fail_at(*bs.node(), "the basis must be nonempty");

  auto is = alg["idempotents"];
  if (!is) fail_at(alg, "table mode needs 'idempotents'");
  std::map<std::string, int> slot_of;
  for (const auto& e : need_array(*is.node(), "idempotents")) {
    const auto* it = e.as_table();
    if (!it) fail_at(e, "an idempotent must be an inline table {element, class}");
    std::string el = need_string(*it, "element", "idempotent");
    auto f = names.find(el);
    if (f == names.end()) fail_at(e, "unknown basis element '" + el + "'");
    slot_of[el] = static_cast<int>(t.idempotents.size());
    t.idempotents.push_back({f->second, need_string(*it, "class", "idempotent")});
  }
  if (t.idempotents.empty()) fail_at(*is.node(), "the idempotent list must be nonempty");
  for (size_t k = 0; k < pending.size(); ++k) {
    auto l = slot_of.find(pending[k].left), r = slot_of.find(pending[k].right);
    if (l == slot_of.end()) fail_at(*pending[k].node, "left vertex '" + pending[k].left + "' is not an idempotent");
    if (r == slot_of.end()) fail_at(*pending[k].node, "right vertex '" + pending[k].right + "' is not an idempotent");
    t.basis[k].left = l->second;
    t.basis[k].right = r->second;
  }
  if (auto ps = alg["products"]) {
    for (const auto& e : need_array(*ps.node(), "products")) {
      const auto& p = need_array(e, "product");
      if (p.size() != 3) fail_at(e, "a product must be [x, y, value] for x*y = value");
      auto x = names.find(need_string(*p.get(0), "product factor"));
      auto y = names.find(need_string(*p.get(1), "product factor"));
      if (x == names.end()) fail_at(*p.get(0), "unknown basis element");
      if (y == names.end()) fail_at(*p.get(1), "unknown basis element");
      t.products[{x->second, y->second}] = combination(*p.get(2), names);
    }
  }
  if (auto rs = alg["radical"])
    for (const auto& e : need_array(*rs.node(), "radical")) {
      auto f = names.find(need_string(e, "radical entry"));
      if (f == names.end()) fail_at(e, "unknown basis element in radical");
      t.radical.push_back(f->second);
    }
  if (auto f = alg["finite"]) {
    auto b = f.value<bool>();
    if (!b) fail_at(*f.node(), "finite must be true or false");
    t.finite = *b;
  }
  return t;
}

std::string quote(const std::string& s) {
  std::ostringstream os;
  os << toml::value<std::string>(s);
  return os.str();
}

std::string coeff_text(const Rational& c) {
  if (denominator(c) == 1) return c.str();
  return quote(c.str());
}

std::string combination_text(const SparseVec& v, const std::vector<TableBasisElem>& basis) {
  if (v.size() == 1 && v.front().second == 1) return quote(basis[static_cast<size_t>(v.front().first)].name);
  std::string s = "[";
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += "[" + coeff_text(v[k].second) + ", " + quote(basis[static_cast<size_t>(v[k].first)].name) + "]";
  }
  return s + "]";
}

std::string relation_text(const Relation& r) {
  std::string s;
  for (size_t k = 0; k < r.terms.size(); ++k) {
    const auto& t = r.terms[k];
    Rational c = t.coeff;
    if (c < 0) {
      s += k ? " - " : "-";
      c = -c;
    } else if (k) {
      s += " + ";
    }
    if (c != 1) s += c.str() + "*";
    for (size_t j = 0; j < t.arrows.size(); ++j) s += (j ? "*" : "") + t.arrows[j];
  }
  return s;
}

}  // namespace

Problem parse_problem(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw InputError(std::string(e.description()), static_cast<int>(e.source().begin.line),
                     static_cast<int>(e.source().begin.column));
  }
  Problem p;
  const toml::table& alg = need_table(root, "algebra");
  std::string mode = alg["mode"] ? need_string(*alg["mode"].node(), "mode") : "quiver";
  std::map<std::string, int> names;
  std::vector<std::string> classes;
  if (mode == "quiver") {
    QuiverPresentation q = parse_quiver(alg);
    classes = q.vertices;
    p.algebra = std::move(q);
  } else if (mode == "table") {
    TableAlgebra t = parse_table(alg, names);
    for (const auto& e : t.idempotents)
      if (std::find(classes.begin(), classes.end(), e.cls) == classes.end()) classes.push_back(e.cls);
    p.algebra = std::move(t);
  } else {
    fail_at(*alg["mode"].node(), "mode must be \"quiver\" or \"table\"");
  }

  if (const auto* o = root["order"].as_table()) {
    if (auto ls = (*o)["labels"]) p.labels = string_list(*ls.node(), "order labels");
    if (auto cs = (*o)["covers"]) {
      for (const auto& e : need_array(*cs.node(), "covers")) {
        auto pair = string_list(e, "cover");
        if (pair.size() != 2) fail_at(e, "a cover must be [smaller, larger]");
        p.covers.emplace_back(pair[0], pair[1]);
      }
    }
    if (!p.labels.empty()) {
      std::set<std::string> want(classes.begin(), classes.end()), have(p.labels.begin(), p.labels.end());
      if (want != have) fail_at(*(*o)["labels"].node(), "order labels must be exactly the simple classes");
    }
    try {
      OrderSpec(p.labels.empty() ? classes : p.labels, p.covers);
    } catch (const OrderError& e) {
      fail_at(*o, e.what());
    }
  }
  if (classes.empty()) throw InputError("the label set Π must be nonempty", 1, 1);

  if (const auto* inv = root["involution"].as_table()) {
    p.has_involution = true;
    if (p.quiver()) {
      if (const auto* a = (*inv)["arrows"].as_table())
        for (const auto& [k, v] : *a) p.inv_arrows[std::string(k.str())] = need_string(v, "arrow image");
      if (const auto* v = (*inv)["vertices"].as_table())
        for (const auto& [k, val] : *v) p.inv_vertices[std::string(k.str())] = need_string(val, "vertex image");
    } else {
      const auto& t = std::get<TableAlgebra>(p.algebra);
      p.inv_table.assign(t.basis.size(), {});
      std::vector<bool> seen(t.basis.size(), false);
      auto es = (*inv)["elements"];
      if (!es) fail_at(*inv, "table mode involution needs 'elements'");
      for (const auto& e : need_array(*es.node(), "involution elements")) {
        const auto& pr = need_array(e, "involution entry");
        if (pr.size() != 2) fail_at(e, "an involution entry must be [x, image]");
        auto f = names.find(need_string(*pr.get(0), "basis name"));
        if (f == names.end()) fail_at(*pr.get(0), "unknown basis element");
        p.inv_table[static_cast<size_t>(f->second)] = combination(*pr.get(1), names);
        seen[static_cast<size_t>(f->second)] = true;
      }
      for (size_t k = 0; k < seen.size(); ++k)
        if (!seen[k]) fail_at(*es.node(), "no image given for '" + t.basis[k].name + "'");
    }
  }
  if (const auto* w = root["window"].as_table()) {
    if (auto m = (*w)["max_degree"]) p.window = need_int(*m.node(), "window.max_degree");
  }
  if (const auto* f = root["field"].as_table()) {
    if (auto c = (*f)["characteristic"]) {
      p.characteristic = need_int(*c.node(), "field.characteristic");
      if (p.characteristic != 0 && !is_prime(p.characteristic))
        fail_at(*c.node(), "characteristic must be 0 or a prime");
    }
  }
  if (const auto* c = root["class"].as_table()) {
    if (auto n = (*c)["name"]) {
      p.cls = need_string(*n.node(), "class.name");
      if (p.cls != "F" && p.cls != "connected" && p.cls != "polynomial" && p.cls != "any")
        fail_at(*n.node(), "class must be F, connected, polynomial or any");
    }
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), path);
}

std::string to_toml(const Problem& p) {
  std::ostringstream os;
  os << "[algebra]\n";
  if (p.quiver()) {
    const auto& q = std::get<QuiverPresentation>(p.algebra);
    os << "# Paths: a*b means traverse a, then b.\n";
    os << "mode = \"quiver\"\n";
    os << "vertices = [";
    for (size_t k = 0; k < q.vertices.size(); ++k) os << (k ? ", " : "") << quote(q.vertices[k]);
    os << "]\n";
    os << "arrows = [\n";
    for (const auto& a : q.arrows)
      os << "  { name = " << quote(a.name) << ", src = " << quote(a.src) << ", dst = " << quote(a.dst)
         << ", degree = " << a.degree << " },\n";
    os << "]\n";
    os << "relations = [";
    for (size_t k = 0; k < q.relations.size(); ++k) os << (k ? ", " : "") << quote(relation_text(q.relations[k]));
    os << "]\n";
  } else {
    const auto& t = std::get<TableAlgebra>(p.algebra);
    const auto& b = t.basis;
    os << "# Products: [x, y, value] means x*y = value (apply y first).\n";
    os << "mode = \"table\"\n";
    os << "finite = " << (t.finite ? "true" : "false") << "\n";
    auto idem_name = [&](int slot) { return quote(b[static_cast<size_t>(t.idempotents[static_cast<size_t>(slot)].element)].name); };
    os << "basis = [\n";
    for (const auto& e : b)
      os << "  { name = " << quote(e.name) << ", degree = " << e.degree << ", left = " << idem_name(e.left)
         << ", right = " << idem_name(e.right) << " },\n";
    os << "]\n";
    os << "idempotents = [\n";
    for (const auto& e : t.idempotents)
      os << "  { element = " << quote(b[static_cast<size_t>(e.element)].name) << ", class = " << quote(e.cls) << " },\n";
    os << "]\n";
    os << "radical = [";
    for (size_t k = 0; k < t.radical.size(); ++k) os << (k ? ", " : "") << quote(b[static_cast<size_t>(t.radical[k])].name);
    os << "]\n";
    os << "products = [\n";
    for (const auto& [xy, v] : t.products) {
      if (v.empty()) continue;
      os << "  [" << quote(b[static_cast<size_t>(xy.first)].name) << ", " << quote(b[static_cast<size_t>(xy.second)].name)
         << ", " << combination_text(v, b) << "],\n";
    }
    os << "]\n";
  }
  os << "\n[order]\n";
  if (!p.labels.empty()) {
    os << "labels = [";
    for (size_t k = 0; k < p.labels.size(); ++k) os << (k ? ", " : "") << quote(p.labels[k]);
    os << "]\n";
  }
  os << "# [smaller, larger]\ncovers = [";
  for (size_t k = 0; k < p.covers.size(); ++k)
    os << (k ? ", " : "") << "[" << quote(p.covers[k].first) << ", " << quote(p.covers[k].second) << "]";
  os << "]\n";
  if (p.has_involution) {
    os << "\n[involution]\n";
    if (p.quiver()) {
      os << "arrows = {";
      size_t k = 0;
      for (const auto& [a, b] : p.inv_arrows) os << (k++ ? ", " : " ") << quote(a) << " = " << quote(b);
      os << (p.inv_arrows.empty() ? "}\n" : " }\n");
      if (!p.inv_vertices.empty()) {
        os << "vertices = {";
        k = 0;
        for (const auto& [a, b] : p.inv_vertices) os << (k++ ? ", " : " ") << quote(a) << " = " << quote(b);
        os << " }\n";
      }
    } else {
      const auto& t = std::get<TableAlgebra>(p.algebra);
      os << "elements = [\n";
      for (size_t k = 0; k < p.inv_table.size(); ++k)
        os << "  [" << quote(t.basis[k].name) << ", " << combination_text(p.inv_table[k], t.basis) << "],\n";
      os << "]\n";
    }
  }
  os << "\n[window]\nmax_degree = " << p.window << "\n";
  os << "\n[field]\ncharacteristic = " << p.characteristic << "\n";
  os << "\n[class]\nname = " << quote(p.cls) << "\n";
  return os.str();
}

Built build(const Problem& p) {
  const Field f(p.characteristic);
  Built b;
  if (p.quiver()) {
    b.algebra = std::make_shared<GradedAlgebra>(from_quiver(std::get<QuiverPresentation>(p.algebra), p.window, f));
  } else {
    TableAlgebra t = std::get<TableAlgebra>(p.algebra);
    if (!t.finite) {
      int top = t.basis.front().degree;
      for (const auto& e : t.basis) top = std::max(top, e.degree);
      // Drop basis elements above the requested window.
      if (p.window < top) {
        std::vector<int> keep(t.basis.size(), -1);
        TableAlgebra c;
        for (size_t k = 0; k < t.basis.size(); ++k)
          if (t.basis[k].degree <= p.window) {
            keep[k] = static_cast<int>(c.basis.size());
            c.basis.push_back(t.basis[k]);
          }
        for (const auto& e : t.idempotents) c.idempotents.push_back({keep[static_cast<size_t>(e.element)], e.cls});
        for (const auto& [xy, v] : t.products) {
          int x = keep[static_cast<size_t>(xy.first)], y = keep[static_cast<size_t>(xy.second)];
          if (x < 0 || y < 0) continue;
          if (t.basis[static_cast<size_t>(xy.first)].degree + t.basis[static_cast<size_t>(xy.second)].degree > p.window) continue;
          SparseVec w;
          for (const auto& [k, cf] : v) w.emplace_back(keep[static_cast<size_t>(k)], cf);
          c.products[{x, y}] = w;
        }
        for (int r : t.radical)
          if (keep[static_cast<size_t>(r)] >= 0) c.radical.push_back(keep[static_cast<size_t>(r)]);
        t = std::move(c);
      }
      t.window_top = std::min(top, p.window);
    }
    b.algebra = std::make_shared<GradedAlgebra>(from_table(t, f));
  }
  b.order = OrderSpec(p.labels.empty() ? b.algebra->classes() : p.labels, p.covers);
  if (p.has_involution) {
    Involution tau;
    if (p.quiver()) {
      std::map<std::string, std::string> verts = p.inv_vertices;
      for (const auto& v : std::get<QuiverPresentation>(p.algebra).vertices)
        if (!verts.count(v)) verts[v] = v;
      tau = involution_from_arrows(*b.algebra, p.inv_arrows, verts);
    } else {
      std::vector<SparseVec> images;
      // Restrict to the kept basis, matched by name.
      const auto& t = std::get<TableAlgebra>(p.algebra);
      std::map<std::string, int> now;
      for (int k = 0; k < b.algebra->dim(); ++k) now[b.algebra->basis(k).name] = k;
      for (int k = 0; k < b.algebra->dim(); ++k) {
        size_t src = 0;
        while (t.basis[src].name != b.algebra->basis(k).name) ++src;
        SparseVec w;
        for (const auto& [e, c] : p.inv_table[src]) w.emplace_back(now.at(t.basis[static_cast<size_t>(e)].name), c);
        images.push_back(w);
      }
      tau = involution_from_table(*b.algebra, images);
    }
    verify_involution(*b.algebra, tau);
    b.tau = std::move(tau);
  }
  return b;
}

}  // namespace laurentia
