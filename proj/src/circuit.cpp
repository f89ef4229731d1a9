#include "tisim/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>

namespace tisim {

std::string component_name(const Component& c) {
  return std::visit([](const auto& x) -> std::string {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, SourceC>)
      return x.particle;
    else
      return x.name;
  }, c);
}

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '_' ||
         c == '\'';
}

// One line -> tokens. Punctuation: ( ) , / and the arrow ->. A '-' inside a
// name ends the name when followed by '>' so "va->v" splits as va, ->, v.
std::vector<std::string> tokenize(const std::string& line, int line_no) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '(' || c == ')' || c == ',' || c == '/') {
      tokens.emplace_back(1, c);
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      tokens.emplace_back("->");
      i += 2;
      continue;
    }
    if (is_name_char(c)) {
      std::size_t start = i;
      while (i < line.size() && is_name_char(line[i])) {
        if (line[i] == '-' && i + 1 < line.size() && line[i + 1] == '>') break;
        ++i;
      }
      tokens.emplace_back(line.substr(start, i - start));
      continue;
    }
    throw ParseError(line_no, std::string("unexpected character '") + c + "'");
  }
  return tokens;
}

class LineParser {
 public:
  LineParser(std::vector<std::string> tokens, int line_no)
      : tokens_(std::move(tokens)), line_(line_no) {}

  bool done() const { return pos_ == tokens_.size(); }

  const std::string& next(const char* what) {
    if (done()) throw ParseError(line_, std::string("expected ") + what + ", got end of line");
    return tokens_[pos_++];
  }

  void expect(const std::string& literal) {
    const std::string& t = next(("'" + literal + "'").c_str());
    if (t != literal) throw ParseError(line_, "expected '" + literal + "', got '" + t + "'");
  }

  bool peek_is(const std::string& literal) const {
    return pos_ < tokens_.size() && tokens_[pos_] == literal;
  }

  std::string ident(const char* what) {
    std::string t = next(what);
    if (t == "(" || t == ")" || t == "," || t == "/" || t == "->")
      throw ParseError(line_, std::string("expected ") + what + ", got '" + t + "'");
    return t;
  }

  Rational rational() {
    std::string t = ident("rational");
    if (peek_is("/")) {
      ++pos_;
      t += "/" + ident("denominator");
    }
    try {
      return parse_rational(t);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_, e.what());
    }
  }

  void end() {
    if (!done()) throw ParseError(line_, "unexpected trailing token '" + tokens_[pos_] + "'");
  }

  int line() const { return line_; }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

struct ParseState {
  CircuitGraph g;
  std::map<std::string, int> producers;  // path -> line
  std::map<std::string, int> consumers;
  std::set<std::string> names;

  void add_producer(const std::string& path, int line) {
    if (!producers.emplace(path, line).second)
      throw ParseError(line, "duplicate producer for path '" + path + "'");
  }
  void add_consumer(const std::string& path, int line) {
    if (!consumers.emplace(path, line).second)
      throw ParseError(line, "duplicate consumer for path '" + path + "'");
  }
  void add_name(const std::string& name, int line) {
    if (!names.insert(name).second)
      throw ParseError(line, "duplicate component name '" + name + "'");
  }
};

SplitterPort parse_port(LineParser& lp) {
  SplitterPort p;
  lp.expect("in");
  p.in = lp.ident("input path");
  lp.expect("(");
  lp.expect("transmit");
  p.transmit = lp.ident("transmit path");
  lp.expect(",");
  lp.expect("reflect");
  p.reflect = lp.ident("reflect path");
  lp.expect(")");
  return p;
}

void parse_line(ParseState& ps, LineParser& lp) {
  const std::string& head = lp.next("directive");
  if (head == "particle") {
    std::string name = lp.ident("particle name");
    if (std::find(ps.g.particles.begin(), ps.g.particles.end(), name) != ps.g.particles.end())
      throw ParseError(lp.line(), "duplicate particle '" + name + "'");
    ps.g.particles.push_back(name);
  } else if (head == "source") {
    SourceC c;
    c.particle = lp.ident("particle");
    lp.expect("->");
    c.out = lp.ident("output path");
    ps.add_name(c.particle, lp.line());
    ps.add_producer(c.out, lp.line());
    ps.g.components.emplace_back(std::move(c));
  } else if (head == "beamsplitter") {
    BeamSplitterC c;
    c.name = lp.ident("splitter name");
    c.a = parse_port(lp);
    if (lp.peek_is("in")) c.b = parse_port(lp);
    ps.add_name(c.name, lp.line());
    ps.add_consumer(c.a.in, lp.line());
    ps.add_producer(c.a.transmit, lp.line());
    ps.add_producer(c.a.reflect, lp.line());
    if (c.b) ps.add_consumer(c.b->in, lp.line());
    ps.g.components.emplace_back(std::move(c));
  } else if (head == "mirror") {
    MirrorC c;
    c.name = lp.ident("mirror name");
    c.in = lp.ident("input path");
    lp.expect("->");
    c.out = lp.ident("output path");
    if (lp.peek_is("phase")) {
      lp.expect("phase");
      std::string v = lp.ident("'on' or 'off'");
      if (v == "on")
        c.phase = true;
      else if (v == "off")
        c.phase = false;
      else
        throw ParseError(lp.line(), "expected 'on' or 'off', got '" + v + "'");
    }
    ps.add_name(c.name, lp.line());
    ps.add_consumer(c.in, lp.line());
    ps.add_producer(c.out, lp.line());
    ps.g.components.emplace_back(std::move(c));
  } else if (head == "interact") {
    InteractionC c;
    c.name = lp.ident("region name");
    c.path_a = lp.ident("first path");
    c.path_b = lp.ident("second path");
    lp.expect("p_ann");
    c.p_ann = lp.rational();
    lp.expect("->");
    c.absorber = lp.ident("absorber name");
    ps.add_name(c.name, lp.line());
    ps.g.components.emplace_back(std::move(c));
  } else if (head == "detector") {
    DetectorC c;
    c.name = lp.ident("detector name");
    lp.expect("in");
    c.in = lp.ident("input path");
    ps.add_name(c.name, lp.line());
    ps.add_consumer(c.in, lp.line());
    ps.g.components.emplace_back(std::move(c));
  } else if (head == "blocker") {
    BlockerC c;
    c.name = lp.ident("blocker name");
    lp.expect("in");
    c.in = lp.ident("input path");
    ps.add_name(c.name, lp.line());
    ps.add_consumer(c.in, lp.line());
    ps.g.components.emplace_back(std::move(c));
  } else {
    throw ParseError(lp.line(), "unknown directive '" + head + "'");
  }
  lp.end();
}

}  // namespace

CircuitGraph parse(const std::string& text) {
  ParseState ps;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    LineParser lp(std::move(tokens), line_no);
    parse_line(ps, lp);
  }
  return std::move(ps.g);
}

std::string render(const CircuitGraph& g) {
  std::ostringstream out;
  for (const auto& p : g.particles) out << "particle " << p << "\n";
  for (const auto& c : g.components) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SourceC>) {
            out << "source " << x.particle << " -> " << x.out << "\n";
          } else if constexpr (std::is_same_v<T, BeamSplitterC>) {
            out << "beamsplitter " << x.name << " in " << x.a.in << " (transmit " << x.a.transmit
                << ", reflect " << x.a.reflect << ")";
            if (x.b)
              out << " in " << x.b->in << " (transmit " << x.b->transmit << ", reflect "
                  << x.b->reflect << ")";
            out << "\n";
          } else if constexpr (std::is_same_v<T, MirrorC>) {
            out << "mirror " << x.name << " " << x.in << " -> " << x.out << " phase "
                << (x.phase ? "on" : "off") << "\n";
          } else if constexpr (std::is_same_v<T, InteractionC>) {
            out << "interact " << x.name << " " << x.path_a << " " << x.path_b << " p_ann "
                << rational_str(x.p_ann) << " -> " << x.absorber << "\n";
          } else if constexpr (std::is_same_v<T, DetectorC>) {
            out << "detector " << x.name << " in " << x.in << "\n";
          } else if constexpr (std::is_same_v<T, BlockerC>) {
            out << "blocker " << x.name << " in " << x.in << "\n";
          }
        },
        c);
  }
  return out.str();
}

Wiring wire(const CircuitGraph& g) {
  Wiring w;
  auto produce = [&](const std::string& path, int idx) {
    auto& info = w.paths[path];
    if (info.producer < 0) info.producer = idx;
  };
  auto consume = [&](const std::string& path, int idx) {
    auto& info = w.paths[path];
    if (info.consumer < 0) info.consumer = idx;
  };
  for (int idx = 0; idx < static_cast<int>(g.components.size()); ++idx) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SourceC>) {
            produce(x.out, idx);
          } else if constexpr (std::is_same_v<T, BeamSplitterC>) {
            consume(x.a.in, idx);
            produce(x.a.transmit, idx);
            produce(x.a.reflect, idx);
            if (x.b) consume(x.b->in, idx);
          } else if constexpr (std::is_same_v<T, MirrorC>) {
            consume(x.in, idx);
            produce(x.out, idx);
          } else if constexpr (std::is_same_v<T, InteractionC>) {
            w.paths[x.path_a];  // ensure referenced paths exist in the map
            w.paths[x.path_b];
          } else {
            consume(x.in, idx);
          }
        },
        g.components[idx]);
  }

  // Particle assignment: sweep to a fixpoint (graphs are small and acyclic).
  for (int idx = 0; idx < static_cast<int>(g.components.size()); ++idx) {
    if (const auto* s = std::get_if<SourceC>(&g.components[idx]))
      w.paths[s->out].particle = s->particle;
  }
  for (std::size_t sweep = 0; sweep < g.components.size(); ++sweep) {
    bool changed = false;
    auto flow = [&](const std::string& from, const std::string& to) {
      const std::string& p = w.paths[from].particle;
      if (!p.empty() && w.paths[to].particle.empty()) {
        w.paths[to].particle = p;
        changed = true;
      }
    };
    for (const auto& c : g.components) {
      if (const auto* m = std::get_if<MirrorC>(&c)) {
        flow(m->in, m->out);
      } else if (const auto* b = std::get_if<BeamSplitterC>(&c)) {
        flow(b->a.in, b->a.transmit);
        flow(b->a.in, b->a.reflect);
        if (b->b) {
          flow(b->b->in, b->a.transmit);
          flow(b->b->in, b->a.reflect);
        }
      }
    }
    if (!changed) break;
  }

  // Dependency edges. Interaction taps order the region after the producers
  // and before the consumers of both referenced paths.
  for (const auto& [path, info] : w.paths) {
    if (info.producer >= 0 && info.consumer >= 0)
      w.edges.emplace_back(info.producer, info.consumer);
  }
  for (int idx = 0; idx < static_cast<int>(g.components.size()); ++idx) {
    const auto* ir = std::get_if<InteractionC>(&g.components[idx]);
    if (!ir) continue;
    for (const std::string* path : {&ir->path_a, &ir->path_b}) {
      const auto& info = w.paths[*path];
      if (info.producer >= 0) w.edges.emplace_back(info.producer, idx);
      if (info.consumer >= 0) w.edges.emplace_back(idx, info.consumer);
    }
  }
  return w;
}

namespace {

// Duplicate producer/consumer detection for hand-built graphs (the parser
// already rejects these in DSL input).
void check_duplicates(const CircuitGraph& g, std::vector<Violation>& out) {
  std::map<std::string, int> producers, consumers;
  auto produce = [&](const std::string& path, const std::string& who) {
    if (++producers[path] == 2)
      out.push_back({"DuplicateProducer", path, "path '" + path + "' has more than one producer (" + who + ")"});
  };
  auto consume = [&](const std::string& path, const std::string& who) {
    if (++consumers[path] == 2)
      out.push_back({"DuplicateConsumer", path, "path '" + path + "' has more than one consumer (" + who + ")"});
  };
  for (const auto& c : g.components) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          std::string who = component_name(c);
          if constexpr (std::is_same_v<T, SourceC>) {
            produce(x.out, who);
          } else if constexpr (std::is_same_v<T, BeamSplitterC>) {
            consume(x.a.in, who);
            produce(x.a.transmit, who);
            produce(x.a.reflect, who);
            if (x.b) consume(x.b->in, who);
          } else if constexpr (std::is_same_v<T, MirrorC>) {
            consume(x.in, who);
            produce(x.out, who);
          } else if constexpr (std::is_same_v<T, InteractionC>) {
            (void)x;
          } else {
            consume(x.in, who);
          }
        },
        c);
  }
}

}  // namespace

std::vector<Violation> validate(const CircuitGraph& g) {
  std::vector<Violation> out;
  if (g.particles.empty())
    out.push_back({"NoParticles", g.name, "circuit declares no particles"});

  std::map<std::string, int> source_count;
  for (const auto& c : g.components) {
    if (const auto* s = std::get_if<SourceC>(&c)) {
      ++source_count[s->particle];
      if (std::find(g.particles.begin(), g.particles.end(), s->particle) == g.particles.end())
        out.push_back({"UnknownParticle", s->particle,
                       "source references undeclared particle '" + s->particle + "'"});
    }
  }
  for (const auto& p : g.particles) {
    auto it = source_count.find(p);
    if (it == source_count.end())
      out.push_back({"ParticleWithoutSource", p, "particle '" + p + "' has no source"});
    else if (it->second > 1)
      out.push_back({"DuplicateSource", p, "particle '" + p + "' has multiple sources"});
  }

  check_duplicates(g, out);
  Wiring w = wire(g);

  for (const auto& c : g.components) {
    if (const auto* b = std::get_if<BeamSplitterC>(&c)) {
      if (b->a.transmit == b->a.reflect)
        out.push_back({"SplitterOutputsClash", b->name,
                       "splitter '" + b->name + "' transmit and reflect outputs coincide"});
      if (b->b) {
        if (b->b->in == b->a.in)
          out.push_back({"SplitterInputClash", b->name,
                         "splitter '" + b->name + "' uses the same input path twice"});
        if (b->b->transmit != b->a.reflect || b->b->reflect != b->a.transmit)
          out.push_back({"SplitterPairNotCrossed", b->name,
                         "splitter '" + b->name +
                             "' second port must transmit to port one's reflect path and vice versa"});
        const auto& pa = w.paths[b->a.in].particle;
        const auto& pb = w.paths[b->b->in].particle;
        if (!pa.empty() && !pb.empty() && pa != pb)
          out.push_back({"SplitterMixedParticles", b->name,
                         "splitter '" + b->name + "' combines paths of different particles"});
      }
    } else if (const auto* ir = std::get_if<InteractionC>(&c)) {
      if (ir->p_ann < 0 || ir->p_ann > 1)
        out.push_back({"BadPAnn", ir->name,
                       "interaction '" + ir->name + "' has p_ann outside [0,1]"});
      const auto& pa = w.paths[ir->path_a].particle;
      const auto& pb = w.paths[ir->path_b].particle;
      if (ir->path_a == ir->path_b || (!pa.empty() && !pb.empty() && pa == pb))
        out.push_back({"SameParticleInteraction", ir->name,
                       "interaction '" + ir->name + "' joins two paths of the same particle"});
    }
  }

  for (const auto& [path, info] : w.paths) {
    if (info.producer < 0)
      out.push_back({"UnproducedPath", path, "path '" + path + "' has no producer"});
    if (info.consumer < 0)
      out.push_back({"UnterminatedPath", path,
                     "path '" + path + "' is never absorbed (no detector/blocker downstream)"});
  }

  // Acyclicity via Kahn's algorithm over the dependency edges.
  std::size_t n = g.components.size();
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> adj(n);
  for (const auto& [from, to] : w.edges) {
    if (from == to) continue;
    adj[from].push_back(to);
    ++indegree[to];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(static_cast<int>(i));
  std::size_t scheduled = 0;
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    ++scheduled;
    for (int next : adj[c])
      if (--indegree[next] == 0) ready.push(next);
  }
  if (scheduled != n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] > 0) {
        out.push_back({"CycleDetected", component_name(g.components[i]),
                       "component '" + component_name(g.components[i]) + "' sits on a cycle"});
        break;
      }
    }
  }
  return out;
}

}  // namespace tisim
