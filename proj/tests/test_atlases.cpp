#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "rab/atlases.hpp"
#include "rab/verify.hpp"
#include "test_helpers.hpp"

using namespace rab;
using namespace rabtest;

namespace {

Chamber ch(const DefiningGraph& g, std::vector<Syllable> w) {
  return Chamber{normal_form(g, w)};
}

// Star: center c joined to leaves a, b, d; swapping b and d is the one
// nontrivial order-preserving automorphism and it fixes the star of a
// pointwise.
const DefiningGraph& star() {
  static DefiningGraph g(
      {{"a", 2, {}}, {"b", 3, {}}, {"c", 2, {}}, {"d", 3, {}}},
      {{2, 0}, {2, 1}, {2, 3}});
  return g;
}

// 4-cycle w - x - y - z - w with all orders 3: the rotation moving every
// vertex one step is order-preserving.
const DefiningGraph& sq3() {
  static DefiningGraph g(
      {{"w", 3, {}}, {"x", 3, {}}, {"y", 3, {}}, {"z", 3, {}}},
      {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  return g;
}

// Syllable-wise application of a group-inversion or vertex-renaming map;
// both extend to automorphisms of the whole group, so applying them to the
// normal form letter by letter is exact.
Element invert_syllables(const DefiningGraph& g, const Element& x) {
  Word w;
  for (const Syllable& s : x.word())
    w.push_back({s.vertex, g.inv_elt(s.vertex, s.elt)});
  return normal_form(g, w);
}

Element rename_syllables(const DefiningGraph& g, const Element& x,
                         const std::vector<int>& rho) {
  Word w;
  for (const Syllable& s : x.word()) w.push_back({rho[s.vertex], s.elt});
  return normal_form(g, w);
}

// One random endpoint-preserving rewrite of a gallery word: insert a
// cancelling pair, split a syllable into two nontrivial factors, or swap
// adjacent syllables across an edge of the graph.
Word rewritten(const DefiningGraph& g, const Word& w, std::mt19937_64& rng) {
  std::vector<Word> options;
  for (size_t p = 0; p <= w.size(); ++p)
    for (int v = 0; v < g.size(); ++v)
      for (int e = 1; e < g.order(v); ++e) {
        Word m = w;
        m.insert(m.begin() + p, {v, g.inv_elt(v, e)});
        m.insert(m.begin() + p, {v, e});
        options.push_back(std::move(m));
      }
  for (size_t p = 0; p < w.size(); ++p) {
    int v = w[p].vertex;
    for (int b = 1; b < g.order(v); ++b) {
      if (b == w[p].elt) continue;
      Word m = w;
      m[p] = {v, b};
      m.insert(m.begin() + p + 1,
               Syllable{v, g.mul(v, g.inv_elt(v, b), w[p].elt)});
      options.push_back(std::move(m));
    }
  }
  for (size_t p = 0; p + 1 < w.size(); ++p)
    if (g.adjacent(w[p].vertex, w[p + 1].vertex)) {
      Word m = w;
      std::swap(m[p], m[p + 1]);
      options.push_back(std::move(m));
    }
  std::uniform_int_distribution<size_t> d(0, options.size() - 1);
  return options[d(rng)];
}

}  // namespace

TEST_CASE("standard atlas validates and acts by right multiplication") {
  const DefiningGraph& g = g0();
  TypedAtlas plain = standard_atlas(g);
  REQUIRE_NOTHROW(validate_atlas(g, plain, 2));
  Chamber base = base_chamber(g);

  BVertex vi = vertex_of(base, vbit(0));
  CHECK(atlas_apply(g, plain, vi, normal_form(g, {{0, 1}}), base) ==
        ch(g, {{0, 1}}));
  BVertex vk = vertex_of(base, vbit(2));
  CHECK(atlas_apply(g, plain, vk, normal_form(g, {{2, 1}}), base) ==
        ch(g, {{2, 2}}));
  Chamber ci = ch(g, {{0, 1}});
  BVertex vk1 = vertex_of(ci, vbit(2));
  CHECK(atlas_apply(g, plain, vk1, normal_form(g, {{2, 1}}), ci) ==
        ch(g, {{0, 1}, {2, 2}}));

  CHECK_THROWS_AS(
      atlas_apply(g, plain, vi, normal_form(g, {{2, 1}}), base),
      domain_error);
  CHECK_THROWS_AS(atlas_apply(g, plain, vk, normal_form(g, {{2, 1}}),
                              ch(g, {{3, 1}})),
                  domain_error);
}

TEST_CASE("atlas words read one letter per panel crossing") {
  const DefiningGraph& g = g0();
  TypedAtlas plain = standard_atlas(g);
  Gallery gal{base_chamber(g), {{0, 1}, {2, 1}}};
  std::vector<AtlasLetter> w = atlas_word(g, plain, gal);
  std::vector<AtlasLetter> expect{{0, normal_form(g, {{0, 1}})},
                                  {2, normal_form(g, {{2, 2}})}};
  CHECK(w == expect);

  CHECK_THROWS_AS(
      atlas_letter(g, plain, base_chamber(g), ch(g, {{0, 1}, {2, 1}})),
      domain_error);

  Gallery empty_gal{ch(g, {{2, 1}}), {}};
  CHECK(atlas_word(g, plain, empty_gal).empty());
  Gallery back = gallery_from_word(g, plain, {}, ch(g, {{2, 1}}));
  CHECK(gallery_chambers(back) == std::vector<Chamber>{ch(g, {{2, 1}})});
}

TEST_CASE("atlas words round trip on seeded galleries") {
  const DefiningGraph& g = g0();
  TypedAtlas plain = standard_atlas(g);
  TypedAtlas tw = inversion_twist_atlas(g, 4);
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    Gallery gal{Chamber{random_element(g, rng, 3)}, random_word(g, rng, 4)};
    for (const TypedAtlas* at : {&plain, &tw}) {
      Gallery back =
          gallery_from_word(g, *at, atlas_word(g, *at, gal), gal.start);
      REQUIRE(gallery_chambers(back) == gallery_chambers(gal));
    }
  }
}

TEST_CASE("gallery transfer lands on the translated endpoint") {
  const DefiningGraph& g = g0();
  TypedAtlas plain = standard_atlas(g);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Gallery gal{Chamber{random_element(g, rng, 3)}, random_word(g, rng, 4)};
    Chamber end1 = gallery_chambers(gal).back();
    Chamber s2{random_element(g, rng, 3)};
    CHECK(transfer_gallery(g, plain, plain, gal, s2) ==
          Chamber{multiply(s2.label,
                           multiply(invert(gal.start.label), end1.label))});
  }
}

TEST_CASE("gallery transfer is invariant under word rewrites") {
  const DefiningGraph& g = g0();
  TypedAtlas plain = standard_atlas(g);
  TypedAtlas tw = inversion_twist_atlas(g, 4);
  std::mt19937_64 rng(9);
  const TypedAtlas* atlases[] = {&plain, &tw};
  for (int t = 0; t < 50; ++t) {
    Gallery gal{Chamber{random_element(g, rng, 2)}, random_word(g, rng, 3)};
    Gallery gal2{gal.start, rewritten(g, gal.letters, rng)};
    REQUIRE(gallery_chambers(gal2).back() == gallery_chambers(gal).back());
    Chamber s2{random_element(g, rng, 2)};
    for (const TypedAtlas* a1 : atlases)
      for (const TypedAtlas* a2 : atlases)
        REQUIRE(transfer_gallery(g, *a1, *a2, gal, s2) ==
                transfer_gallery(g, *a1, *a2, gal2, s2));
  }
}

TEST_CASE("extension of standard seeds is left multiplication") {
  const DefiningGraph& g = g0();
  TypedAtlas plain = standard_atlas(g);
  Chamber base = base_chamber(g);
  std::vector<int> id = identity_permutation(g.size());
  size_t ball3 = chamber_ball(g, 3).size();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    Element gamma = random_element(g, rng, 3);
    AtlasExtension ext = extend_automorphism(
        g, seed_permutation(g, plain, base, plain, Chamber{gamma}), base,
        Chamber{gamma}, plain, plain, 3);
    REQUIRE(ext.table.size() == ball3);
    for (const ChamberMap& m : ext.table) {
      REQUIRE(m.to.label == multiply(gamma, m.from.label));
      REQUIRE(m.sigma == id);
    }
  }

  AtlasExtension idext =
      extend_automorphism(g, id, base, base, plain, plain, 2);
  for (const ChamberMap& m : idext.table) CHECK(m.from == m.to);

  CHECK_THROWS_AS(extend_automorphism(g, {1, 0, 2, 3}, base, base, plain,
                                      plain, 1),
                  domain_error);
}

TEST_CASE("inversion twist conjugates onto the standard atlas") {
  const DefiningGraph& g = g0();
  TypedAtlas plain = standard_atlas(g);
  TypedAtlas tw = inversion_twist_atlas(g, 3);
  REQUIRE_NOTHROW(validate_atlas(g, tw, 2));
  Chamber base = base_chamber(g);
  std::vector<int> id = identity_permutation(g.size());

  AtlasExtension conj =
      extend_automorphism(g, id, base, base, tw, plain, 3);
  REQUIRE(conj.table.size() == chamber_ball(g, 3).size());
  bool moved = false;
  for (const ChamberMap& m : conj.table) {
    REQUIRE(m.to.label == invert_syllables(g, m.from.label));
    REQUIRE(m.sigma == id);
    moved = moved || m.to != m.from;
  }
  CHECK(moved);  // the conjugator is not a translation: it fixes the base

  // a twisted-atlas automorphism seeded by a translation is that translation
  TypedAtlas tw6 = inversion_twist_atlas(g, 6);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5; ++t) {
    Element delta = random_element(g, rng, 3);
    AtlasExtension lam = extend_automorphism(g, id, base, Chamber{delta},
                                             tw6, tw6, 3);
    for (const ChamberMap& m : lam.table) {
      REQUIRE(m.to.label == multiply(delta, m.from.label));
      REQUIRE(m.sigma == id);
    }
  }
}

TEST_CASE("commensuration demo with the trivial twist") {
  const DefiningGraph& g = g0();
  std::mt19937_64 rng(17);
  std::vector<Element> lambdas;
  for (int t = 0; t < 5; ++t) lambdas.push_back(random_element(g, rng, 2));
  CommensurationReport rep =
      commensuration_demo(g, standard_atlas(g), lambdas, 2);
  REQUIRE(rep.conjugator_found);
  REQUIRE(rep.all_ok);
  CHECK(rep.ball_size == chamber_ball(g, 2).size());
  REQUIRE(rep.samples.size() == lambdas.size());
  for (size_t k = 0; k < lambdas.size(); ++k)
    CHECK(rep.samples[k].gamma == lambdas[k]);
}

TEST_CASE("commensuration demo with the inversion twist") {
  const DefiningGraph& g = g0();
  // lambda reach is 2, report radius 3: the twist must cover radius 5
  TypedAtlas tw = inversion_twist_atlas(g, 5);
  std::mt19937_64 rng(19);
  std::vector<Element> lambdas;
  for (int t = 0; t < 10; ++t) lambdas.push_back(random_element(g, rng, 2));
  CommensurationReport rep = commensuration_demo(g, tw, lambdas, 3);
  REQUIRE(rep.conjugator_found);
  REQUIRE(rep.all_ok);
  CHECK(rep.ball_size == chamber_ball(g, 3).size());
  REQUIRE(rep.samples.size() == lambdas.size());
  for (size_t k = 0; k < lambdas.size(); ++k) {
    CHECK(rep.samples[k].ok);
    CHECK(rep.samples[k].gamma == invert_syllables(g, lambdas[k]));
  }
}

TEST_CASE("commensuration demo with a rotation twist") {
  const DefiningGraph& g = sq3();
  std::vector<int> rho{1, 2, 3, 0};
  TypedAtlas tw = constant_twist_atlas(g, rho);
  REQUIRE_NOTHROW(validate_atlas(g, tw, 2));
  Chamber base = base_chamber(g);

  // under the rotated typing a crossing of the w-panel reads as an x-letter
  Gallery one{base, {{0, 1}}};
  std::vector<AtlasLetter> w = atlas_word(g, tw, one);
  std::vector<AtlasLetter> expect{{1, normal_form(g, {{1, 2}})}};
  CHECK(w == expect);

  // the conjugator renames every syllable by the rotation, exponents kept
  AtlasExtension conj = extend_automorphism(g, rho, base, base, tw,
                                            standard_atlas(g), 2);
  CHECK(extension_image(conj, ch(g, {{0, 1}})) == ch(g, {{1, 1}}));
  CHECK(extension_image(conj, ch(g, {{3, 2}})) == ch(g, {{0, 2}}));
  CHECK(extension_image(conj, ch(g, {{0, 1}, {2, 2}})) ==
        ch(g, {{1, 1}, {3, 2}}));
  for (const ChamberMap& m : conj.table) REQUIRE(m.sigma == rho);

  std::mt19937_64 rng(23);
  std::vector<Element> lambdas;
  for (int t = 0; t < 10; ++t) lambdas.push_back(random_element(g, rng, 2));
  CommensurationReport rep = commensuration_demo(g, tw, lambdas, 3);
  REQUIRE(rep.conjugator_found);
  REQUIRE(rep.all_ok);
  REQUIRE(rep.samples.size() == lambdas.size());
  for (size_t k = 0; k < lambdas.size(); ++k)
    CHECK(rep.samples[k].gamma == rename_syllables(g, lambdas[k], rho));
}

TEST_CASE("atlases induced by groupoids") {
  const DefiningGraph& g = star();
  Chamber base = base_chamber(g);
  std::vector<int> id = identity_permutation(g.size());
  std::vector<int> alpha{0, 3, 2, 1};

  // the left-multiplication groupoid induces the standard atlas
  ResidueGroupoid phi0 = gamma_groupoid(g.all(), base, 2);
  CHECK(atlas_from_groupoid(g, phi0) == standard_atlas(g));

  // twisting by the leaf swap once per a-crossing is a consistent groupoid
  ResidueGroupoid phi = parity_twist_groupoid(g, 0, alpha, 3);
  REQUIRE_NOTHROW(validate_groupoid(phi));
  TypedAtlas at = atlas_from_groupoid(g, phi);
  CHECK(tau_at(g, at.typing, base) == id);
  CHECK(tau_at(g, at.typing, ch(g, {{0, 1}})) == alpha);
  CHECK(tau_at(g, at.typing, ch(g, {{0, 1}, {1, 1}})) == alpha);
  CHECK(tau_at(g, at.typing, ch(g, {{1, 1}})) == id);
  REQUIRE_NOTHROW(validate_atlas(g, at, 2));

  // chamber holonomy: the a-parity of the translation decides the twist
  CHECK(chamber_holonomy(g, phi, normal_form(g, {{0, 1}})) == alpha);
  CHECK(chamber_holonomy(g, phi, normal_form(g, {{1, 1}})) == id);
  std::mt19937_64 rng(29);
  for (int t = 0; t < 5; ++t) {
    Element l1 = random_element(g, rng, 1);
    Element l2 = random_element(g, rng, 1);
    ChamberMap left = groupoid_map(phi, Chamber{multiply(l1, l2)}, base);
    ChamberMap right = compose(groupoid_map(phi, Chamber{l1}, base),
                               translate(l1, groupoid_map(phi, Chamber{l2},
                                                          base)));
    REQUIRE(left == right);
  }

  // seeded actions override the defaults for their classes
  BVertex vb = vertex_of(base, vbit(1));
  ColumnLabels inv_labels;
  for (const Element& w : group_elements(g, vbit(1))) inv_labels[w] = w;
  TypedAtlas seeded =
      atlas_from_groupoid(g, phi, {{level_class(vb), inv_labels}});
  CHECK(class_labels(g, seeded, vb) == inv_labels);
  REQUIRE_NOTHROW(validate_atlas(g, seeded, 2));

  // an inconsistent groupoid is rejected before any atlas is built
  ResidueGroupoid bad = gamma_groupoid(g.all(), base, 2);
  bad.adjacent_maps[{identity(g), normal_form(g, {{0, 1}})}] =
      ChamberMap{base, ch(g, {{0, 1}}), alpha};
  CHECK_THROWS_AS(atlas_from_groupoid(g, bad), domain_error);
}

TEST_CASE("typing maps reject inadmissible or inconsistent twists") {
  const DefiningGraph& g = g0();
  TypingMap t;
  // swapping i and j breaks the edge j-k
  CHECK_THROWS_AS(set_tau(g, t, base_chamber(g), {1, 0, 2, 3}),
                  validation_error);
  // swapping the path ends preserves edges but pairs order 2 with order 3
  CHECK_THROWS_AS(set_tau(g, t, base_chamber(g), {2, 1, 0, 3}),
                  validation_error);
  CHECK(t.tau.empty());

  // a chamber disagreeing with a shared vertex's own chamber is caught
  const DefiningGraph& s = star();
  TypingMap t2;
  t2.tau[ch(s, {{2, 1}})] = {0, 3, 2, 1};
  CHECK_THROWS_AS(validate_typing(s, t2, 1), validation_error);

  // the constant rotation twist is consistent at every radius checked
  TypingMap rot;
  rot.global = {1, 2, 3, 0};
  REQUIRE_NOTHROW(validate_typing(sq3(), rot, 2));
}

TEST_CASE("labelings are normalized and validated when stored") {
  const DefiningGraph& g = g0();
  TypedAtlas at = standard_atlas(g);
  BVertex vk = vertex_of(base_chamber(g), vbit(2));
  std::vector<Element> cols = group_elements(g, vbit(2));

  // a right-translated copy of the default normalizes back to the default
  ColumnLabels shifted;
  for (const Element& w : cols)
    shifted[w] = multiply(invert(w), cols[1]);
  set_class_labels(g, at, vk, shifted);
  CHECK(at.actions.empty());

  // wrong column set and non-bijective labels are rejected
  ColumnLabels missing = shifted;
  missing.erase(cols[1]);
  CHECK_THROWS_AS(set_class_labels(g, at, vk, missing), validation_error);
  ColumnLabels constant;
  for (const Element& w : cols) constant[w] = identity(g);
  CHECK_THROWS_AS(set_class_labels(g, at, vk, constant), validation_error);

  // the inversion twist differs from the default exactly on order-3 classes
  TypedAtlas tw = inversion_twist_atlas(g, 1);
  for (const auto& [cls, labels] : tw.actions) {
    int j = vmembers(cls.type_std)[0];
    CHECK(g.order(j) == 3);
    REQUIRE_NOTHROW(validate_atlas(g, tw, 1));
  }
  CHECK(!tw.actions.empty());
}

TEST_CASE("pushforwards compose and carry twists to their conjugates") {
  const DefiningGraph& g = g0();
  TypedAtlas plain = standard_atlas(g);
  TypedAtlas tw3 = inversion_twist_atlas(g, 3);
  std::mt19937_64 rng(31);

  for (int t = 0; t < 5; ++t) {
    Element a = random_element(g, rng, 2);
    Element b = random_element(g, rng, 2);
    CHECK(pushforward(g, a, plain) == plain);
    CHECK(pushforward(g, multiply(a, b), tw3) ==
          pushforward(g, a, pushforward(g, b, tw3)));
  }

  // carrying the twisted atlas through its own conjugator gives the
  // standard atlas over the transported ball
  Chamber base = base_chamber(g);
  std::vector<int> id = identity_permutation(g.size());
  TypedAtlas tw4 = inversion_twist_atlas(g, 4);
  AtlasExtension conj = extend_automorphism(g, id, base, base, tw4, plain, 4);
  CHECK(pushforward(g, conj, tw4, 2) == plain);

  AtlasExtension idcomp = compose_extensions(invert_extension(conj), conj);
  for (const ChamberMap& m : idcomp.table) {
    REQUIRE(m.from == m.to);
    REQUIRE(m.sigma == id);
  }
}

TEST_CASE("atlas battery") {
  CHECK(all_ok(verify_atlases(g0(), 2, 7)));
  CHECK(all_ok(verify_atlases(star(), 2, 13)));
  CHECK(all_ok(verify_atlases(sq3(), 2, 5)));
}
