#!/usr/bin/env python3
"""Writes the packaged reference data under data/.

registry.csv, languages.csv and pool.csv hold the property classification
and language list; data/catalog/*.tpl the 189 query templates; and
desk_snapshot.nt a small synthetic lexeme graph that populates every
template. Items whose label starts with "desk:" are placeholders invented
for the snapshot, not real Wikidata entities.

Run from the repository root: python3 tools/gen_desk_data.py
"""

import os
import sys

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")

# ---------------------------------------------------------------------------
# Property classification

PROPERTIES = [
    # pid, label, category, attachment, range, phrase used in utterances
    ("P5185", "grammatical gender", "Linguistic", "lexeme", "q_item", "gender"),
    ("P5186", "conjugation class", "Linguistic", "lexeme", "q_item", "conjugation class"),
    ("P5187", "word stem", "Linguistic", "lexeme", "monolingual_text", "word stem"),
    ("P5191", "derived from lexeme", "Linguistic", "lexeme", "lexeme", "source word"),
    ("P5238", "combines lexemes", "Linguistic", "lexeme", "lexeme", "component word"),
    ("P5402", "homograph lexeme", "Linguistic", "lexeme", "lexeme", "homograph"),
    ("P5526", "valency", "Linguistic", "lexeme", "q_item", "valency"),
    ("P5713", "requires grammatical feature", "Linguistic", "sense", "q_item",
     "required grammatical feature"),
    ("P5911", "paradigm class", "Linguistic", "lexeme", "q_item", "paradigm class"),
    ("P7486", "grammatical aspect", "Linguistic", "lexeme", "q_item", "grammatical aspect"),
    ("P9970", "predicate for", "Linguistic", "sense", "q_item", "predicate"),
    ("P5323", "attested in", "Historical", "lexeme", "q_item", "attestation"),
    ("P6684", "first attested from", "Historical", "lexeme", "q_item", "first attestation"),
    ("P5401", "auxiliary verb", "Syntactic", "form", "lexeme", "auxiliary verb"),
    ("P5978", "classifier", "Syntactic", "sense", "lexeme", "classifier"),
    ("P6084", "location of sense usage", "Syntactic", "sense", "q_item", "region of use"),
    ("P5831", "usage example", "Syntactic", "sense", "monolingual_text", "usage example"),
    ("P5923", "creates lexeme type", "Syntactic", "lexeme", "q_item", "resulting word type"),
    ("P5976", "false friend", "Syntactic", "lexeme", "lexeme", "false friend"),
    ("P5973", "synonym", "Semantic", "sense", "sense", "synonym"),
    ("P5974", "antonym", "Semantic", "sense", "sense", "antonym"),
    ("P5975", "troponym of", "Semantic", "sense", "sense", "broader verb"),
    ("P11577", "said to be the same as lexeme", "Semantic", "lexeme", "lexeme", "equivalent spelling"),
    ("P8471", "pertainym of", "Semantic", "sense", "sense", "related noun"),
    ("P5425", "Han character in this lexeme", "OrthographicPhonetic", "lexeme", "lexeme",
     "Han character"),
    ("P898", "IPA transcription", "OrthographicPhonetic", "form", "string", "IPA transcription"),
    ("P2859", "X-SAMPA code", "OrthographicPhonetic", "form", "string", "X-SAMPA code"),
    ("P5276", "Slavistic Phonetic Alphabet transcription", "OrthographicPhonetic", "form",
     "string", "Slavistic transcription"),
    ("P7243", "pronunciation", "OrthographicPhonetic", "form", "monolingual_text",
     "pronunciation"),
    ("P5972", "translation", "Translation", "sense", "sense", "translation"),
    ("P7481", "variety of lexeme, form or sense", "Translation", "form", "q_item",
     "language variety"),
    ("P6191", "language style", "Stylistic", "sense", "q_item", "language style"),
    ("P6571", "collective noun for animals", "Stylistic", "sense", "lexeme",
     "animal it groups"),
    ("P5426", "tone or pitch accent class", "Stylistic", "form", "q_item", "tone class"),
]

MULTI_LINGUAL = {"P5972", "P5976"}

# Properties outside the lexicographic set that multi-property templates
# may request.
POOL = [
    ("P18", "image"), ("P31", "instance of"), ("P279", "subclass of"),
    ("P361", "part of"), ("P407", "language of work or name"), ("P443", "pronunciation audio"),
    ("P460", "said to be the same as"), ("P527", "has part"), ("P828", "has cause"),
    ("P973", "described at URL"), ("P1245", "OmegaWiki Defined Meaning"),
    ("P1343", "described by source"), ("P1476", "title"), ("P1552", "has characteristic"),
    ("P1889", "different from"), ("P2888", "exact match"), ("P5137", "item for this sense"),
    ("P5830", "demonstrates form"), ("P6072", "demonstrates sense"),
    ("P8814", "WordNet 3.1 Synset ID"),
]

LANGUAGES = [
    ("Q1860", "en", "English"), ("Q188", "de", "German"), ("Q150", "fr", "French"),
    ("Q9056", "cs", "Czech"), ("Q8752", "eu", "Basque"), ("Q397", "la", "Latin"),
    ("Q7850", "zh", "Chinese"),
]
LANG_QID = {code: qid for qid, code, _ in LANGUAGES}
LANG_NAME = {code: name for _, code, name in LANGUAGES}

# ---------------------------------------------------------------------------
# Items

NOUN, VERB, ADJ, ADV, ONOMATOPOEIA = "Q1084", "Q24905", "Q34698", "Q380057", "Q170239"
SINGULAR, PLURAL, NOMINATIVE, GENITIVE = "Q110786", "Q146786", "Q131105", "Q146233"
INFINITIVE, PRESENT, PAST = "Q179230", "Q192613", "Q1994301"
GENDER = {"m": "Q499327", "f": "Q1775415", "n": "Q1775461"}

ITEMS = {
    NOUN: "noun", VERB: "verb", ADJ: "adjective", ADV: "adverb",
    ONOMATOPOEIA: "onomatopoeia", SINGULAR: "singular", PLURAL: "plural",
    NOMINATIVE: "nominative case", GENITIVE: "genitive case", INFINITIVE: "infinitive",
    PRESENT: "present tense", PAST: "past tense", "Q499327": "masculine",
    "Q1775415": "feminine", "Q1775461": "neuter", "Q40": "Austria", "Q183": "Germany",
    "Q145": "United Kingdom", "Q7976": "American English", "Q7979": "British English",
}
for qid, _, name in LANGUAGES:
    ITEMS[qid] = name

_placeholders = {}


def placeholder(name):
    """Invented item for the snapshot; ids count up from Q90000001."""
    if name not in _placeholders:
        qid = "Q%d" % (90000001 + len(_placeholders))
        _placeholders[name] = qid
        ITEMS[qid] = "desk:" + name
    return _placeholders[name]


# ---------------------------------------------------------------------------
# Lexemes


class Lexeme:
    def __init__(self, key, lemma, lang, category):
        self.key, self.lemma, self.lang, self.category = key, lemma, lang, category
        self.lid = None
        self.forms = []   # [rep, features, {pid: [value]}]
        self.senses = []  # [gloss, {pid: [value]}]
        self.props = {}

    def form(self, rep, *features):
        self.forms.append([rep, list(features), {}])
        return len(self.forms) - 1

    def sense(self, gloss):
        self.senses.append([gloss, {}])
        return len(self.senses) - 1


LEX = {}
ORDER = []


def lexeme(key, lemma, lang, category):
    lx = Lexeme(key, lemma, lang, category)
    LEX[key] = lx
    ORDER.append(lx)
    return lx


# Values: ("item", qid) ("lex", key) ("sense", key, i) ("str", s) ("mono", s, lang)
def add(props, pid, value):
    props.setdefault(pid, []).append(value)


def lex_prop(key, pid, value):
    add(LEX[key].props, pid, value)


def sense_prop(key, pid, value, i=0):
    add(LEX[key].senses[i][1], pid, value)


def form_prop(key, pid, value, i=0):
    add(LEX[key].forms[i][2], pid, value)


NOUNS = [
    # concept, gloss, {lang: (lemma, gender, plural)}
    ("Q89", "round fruit of the apple tree", {
        "en": ("apple", None, "apples"), "de": ("Apfel", "m", "Äpfel"),
        "fr": ("pomme", "f", "pommes"), "cs": ("jablko", "n", "jablka"),
        "eu": ("sagar", None, "sagarrak")}),
    ("Q283", "clear liquid essential for life", {
        "en": ("water", None, "waters"), "de": ("Wasser", "n", "Wässer"),
        "fr": ("eau", "f", "eaux"), "cs": ("voda", "f", "vody"), "eu": ("ur", None, "urak")}),
    ("Q3947", "building for people to live in", {
        "en": ("house", None, "houses"), "de": ("Haus", "n", "Häuser"),
        "fr": ("maison", "f", "maisons"), "cs": ("dům", "m", "domy"),
        "eu": ("etxe", None, "etxeak")}),
    ("Q144", "domesticated canine", {
        "en": ("dog", None, "dogs"), "de": ("Hund", "m", "Hunde"),
        "fr": ("chien", "m", "chiens"), "cs": ("pes", "m", "psi"),
        "eu": ("txakur", None, "txakurrak")}),
    ("Q146", "small domesticated feline", {
        "en": ("cat", None, "cats"), "de": ("Katze", "f", "Katzen"),
        "fr": ("chat", "m", "chats"), "cs": ("kočka", "f", "kočky"),
        "eu": ("katu", None, "katuak")}),
    ("Q571", "bound set of printed pages", {
        "en": ("book", None, "books"), "de": ("Buch", "n", "Bücher"),
        "fr": ("livre", "m", "livres"), "cs": ("kniha", "f", "knihy"),
        "eu": ("liburu", None, "liburuak")}),
    ("Q10884", "perennial woody plant", {
        "en": ("tree", None, "trees"), "de": ("Baum", "m", "Bäume"),
        "fr": ("arbre", "m", "arbres"), "cs": ("strom", "m", "stromy"),
        "eu": ("zuhaitz", None, "zuhaitzak")}),
    ("Q525", "star at the centre of the Solar System", {
        "en": ("sun", None, "suns"), "de": ("Sonne", "f", "Sonnen"),
        "fr": ("soleil", "m", "soleils"), "cs": ("slunce", "n", "slunce"),
        "eu": ("eguzki", None, "eguzkiak")}),
    ("Q405", "natural satellite of the Earth", {
        "en": ("moon", None, "moons"), "de": ("Mond", "m", "Monde"),
        "fr": ("lune", "f", "lunes"), "cs": ("měsíc", "m", "měsíce"),
        "eu": ("ilargi", None, "ilargiak")}),
    ("Q3196", "rapid oxidation giving off heat and light", {
        "en": ("fire", None, "fires"), "de": ("Feuer", "n", "Feuer"),
        "fr": ("feu", "m", "feux"), "cs": ("oheň", "m", "ohně"), "eu": ("su", None, "suak")}),
    ("Q515", "large human settlement", {
        "en": ("city", None, "cities"), "de": ("Stadt", "f", "Städte"),
        "fr": ("ville", "f", "villes"), "cs": ("město", "n", "města"),
        "eu": ("hiri", None, "hiriak")}),
    ("Q7802", "baked food made of flour and water", {
        "en": ("bread", None, "breads"), "de": ("Brot", "n", "Brote"),
        "fr": ("pain", "m", "pains"), "cs": ("chléb", "m", "chleby"),
        "eu": ("ogi", None, "ogiak")}),
    ("Q8495", "white liquid produced by mammals", {
        "en": ("milk", None, "milks"), "de": ("Milch", "f", "Milche"),
        "fr": ("lait", "m", "laits"), "cs": ("mléko", "n", "mléka"),
        "eu": ("esne", None, "esneak")}),
    ("Q4022", "natural flowing watercourse", {
        "en": ("river", None, "rivers"), "de": ("Fluss", "m", "Flüsse"),
        "fr": ("rivière", "f", "rivières"), "cs": ("řeka", "f", "řeky"),
        "eu": ("ibai", None, "ibaiak")}),
    ("Q1075", "visual perception of light wavelengths", {
        "en": ("color", None, "colors"), "de": ("Farbe", "f", "Farben"),
        "fr": ("couleur", "f", "couleurs"), "cs": ("barva", "f", "barvy"),
        "eu": ("kolore", None, "koloreak")}),
]

CASED = {"de", "cs"}


def noun(key, lemma, lang, gender, plural, gloss, concept=None):
    lx = lexeme(key, lemma, lang, NOUN)
    if lang in CASED:
        lx.form(lemma, SINGULAR, NOMINATIVE)
    else:
        lx.form(lemma, SINGULAR)
    if plural:
        if lang in CASED:
            lx.form(plural, PLURAL, NOMINATIVE)
        else:
            lx.form(plural, PLURAL)
    lx.sense(gloss)
    if gender:
        lex_prop(key, "P5185", ("item", GENDER[gender]))
    if concept:
        sense_prop(key, "P5137", ("item", concept))
    return lx


def build_lexemes():
    for concept, gloss, words in NOUNS:
        for lang, (lemma, gender, plural) in words.items():
            noun("%s:%s" % (lang, lemma), lemma, lang, gender, plural, gloss, concept)
    # English senses translate to every other language and back.
    for _, _, words in NOUNS:
        en = "en:" + words["en"][0]
        for lang, (lemma, _, _) in words.items():
            if lang == "en":
                continue
            other = "%s:%s" % (lang, lemma)
            sense_prop(en, "P5972", ("sense", other, 0))
            sense_prop(other, "P5972", ("sense", en, 0))

    noun("cs:medailon", "medailon", "cs", "m", "medailony", "small decorated pendant")
    noun("de:Probekörper", "Probekörper", "de", "m", "Probekörper", "specimen used in a test")
    noun("en:colour", "colour", "en", None, "colours", "visual perception of light wavelengths")
    noun("en:gift", "gift", "en", None, "gifts", "something given freely")
    noun("de:Gift", "Gift", "de", "n", "Gifte", "poisonous substance")
    noun("de:Apfelbaum", "Apfelbaum", "de", "m", "Apfelbäume", "tree bearing apples")
    noun("en:housecat", "housecat", "en", None, "housecats", "cat kept as a pet")
    noun("de:Semmel", "Semmel", "de", "f", "Semmeln", "small bread roll")
    noun("de:Brötchen", "Brötchen", "de", "n", "Brötchen", "small bread roll")
    noun("en:pack", "pack", "en", None, "packs", "group of dogs or wolves")
    noun("en:clowder", "clowder", "en", None, "clowders", "group of cats")
    noun("la:color", "color", "la", "m", "colores", "colour, hue")
    noun("la:aqua", "aqua", "la", "f", "aquae", "water")
    noun("la:focus", "focus", "la", "m", "foci", "hearth, fireplace")
    LEX["de:Apfel"].form("Apfels", SINGULAR, GENITIVE)

    classifier = placeholder("classifier")
    for key, lemma, gloss, concept in [
            ("zh:火", "火", "fire", "Q3196"), ("zh:山", "山", "mountain", "Q8502"),
            ("zh:火山", "火山", "volcano", "Q8072"), ("zh:座", "座", "classifier for mountains", None),
            ("zh:个", "个", "general classifier", None)]:
        lx = lexeme(key, lemma, "zh", NOUN if concept else classifier)
        lx.form(lemma)
        lx.sense(gloss)
        if concept:
            sense_prop(key, "P5137", ("item", concept))

    suffix = placeholder("suffix")
    for key, lemma, gloss in [("en:-ness", "-ness", "forms nouns of state"),
                              ("en:-ly", "-ly", "forms adverbs from adjectives")]:
        lx = lexeme(key, lemma, "en", suffix)
        lx.form(lemma)
        lx.sense(gloss)

    verbs = [
        # key, lemma, lang, present, past, participle, auxiliary, gloss
        ("en:run", "run", "en", "runs", "ran", None, None, "move quickly on foot"),
        ("en:eat", "eat", "en", "eats", "ate", None, None, "take in food"),
        ("en:jog", "jog", "en", "jogs", "jogged", None, None, "run at a slow pace"),
        ("en:devour", "devour", "en", "devours", "devoured", None, None, "eat greedily"),
        ("en:fire#v", "fire", "en", "fires", "fired", None, None, "discharge a weapon"),
        ("en:milk#v", "milk", "en", "milks", "milked", None, None, "draw milk from an animal"),
        ("de:sein", "sein", "de", "ist", "war", None, None, "to be"),
        ("de:haben", "haben", "de", "hat", "hatte", None, None, "to have"),
        ("de:laufen", "laufen", "de", "läuft", "lief", "gelaufen", "de:sein", "move quickly on foot"),
        ("de:essen", "essen", "de", "isst", "aß", "gegessen", "de:haben", "take in food"),
        ("fr:avoir", "avoir", "fr", "a", "eut", None, None, "to have"),
        ("fr:être", "être", "fr", "est", "fut", None, None, "to be"),
        ("fr:courir", "courir", "fr", "court", "courut", "couru", "fr:avoir", "move quickly on foot"),
        ("fr:manger", "manger", "fr", "mange", "mangea", "mangé", "fr:avoir", "take in food"),
        ("cs:běžet", "běžet", "cs", "běží", "běžel", None, None, "move quickly on foot"),
        ("cs:jíst", "jíst", "cs", "jí", "jedl", None, None, "take in food"),
        ("cs:sníst", "sníst", "cs", "sní", "snědl", None, None, "eat up"),
    ]
    for key, lemma, lang, present, past, participle, aux, gloss in verbs:
        lx = lexeme(key, lemma, lang, VERB)
        lx.form(lemma, INFINITIVE)
        lx.form(present, PRESENT)
        lx.form(past, PAST)
        if participle:
            i = lx.form(participle, placeholder("past participle"))
            form_prop(key, "P5401", ("lex", aux), i)
        lx.sense(gloss)

    adjectives = [
        ("red", "color of blood", {"en": "red", "de": "rot", "fr": "rouge", "cs": "červený",
                                   "eu": "gorri"}),
        ("big", "of large size", {"en": "big", "de": "groß", "fr": "grand", "cs": "velký",
                                  "eu": "handi"}),
    ]
    for _, gloss, words in adjectives:
        for lang, lemma in words.items():
            lx = lexeme("%s:%s" % (lang, lemma), lemma, lang, ADJ)
            lx.form(lemma)
            lx.sense(gloss)
        for lang, lemma in words.items():
            if lang != "en":
                sense_prop("en:" + words["en"], "P5972", ("sense", "%s:%s" % (lang, lemma), 0))
                sense_prop("%s:%s" % (lang, lemma), "P5972", ("sense", "en:" + words["en"], 0))
    sense_prop("en:red", "P5137", ("item", "Q3142"))
    ITEMS["Q3142"] = "red"
    for key, lemma, lang, gloss in [("en:large", "large", "en", "of great size"),
                                    ("en:small", "small", "en", "of little size"),
                                    ("de:klein", "klein", "de", "of little size"),
                                    ("en:solar", "solar", "en", "relating to the sun"),
                                    ("en:lunar", "lunar", "en", "relating to the moon")]:
        lx = lexeme(key, lemma, lang, ADJ)
        lx.form(lemma)
        lx.sense(gloss)
    for key, lemma, lang, gloss in [("en:quickly", "quickly", "en", "at speed"),
                                    ("de:schnell", "schnell", "de", "at speed")]:
        lx = lexeme(key, lemma, lang, ADV)
        lx.form(lemma)
        lx.sense(gloss)
    for lang, lemma in [("en", "meow"), ("de", "miau"), ("fr", "miaou"), ("cs", "mňau"),
                        ("eu", "miau")]:
        lx = lexeme("%s:%s" % (lang, lemma), lemma, lang, ONOMATOPOEIA)
        lx.form(lemma)
        lx.sense("sound a cat makes")

    ITEMS.update({"Q8502": "mountain", "Q8072": "volcano"})
    for concept, _, words in NOUNS:
        ITEMS[concept] = words["en"][0]


def build_properties():
    I = lambda name: ("item", placeholder(name))
    # Linguistic
    lex_prop("fr:manger", "P5186", I("French first-group verb"))
    lex_prop("fr:courir", "P5186", I("French third-group verb"))
    lex_prop("fr:avoir", "P5186", I("French third-group verb"))
    lex_prop("fr:être", "P5186", I("French third-group verb"))
    for key, stem in [("en:run", ("run", "en")), ("de:laufen", ("lauf", "de")),
                      ("de:essen", ("ess", "de")), ("fr:manger", ("mang", "fr")),
                      ("fr:courir", ("cour", "fr"))]:
        lex_prop(key, "P5187", ("mono",) + stem)
    lex_prop("en:color", "P5191", ("lex", "la:color"))
    lex_prop("fr:couleur", "P5191", ("lex", "la:color"))
    lex_prop("fr:eau", "P5191", ("lex", "la:aqua"))
    lex_prop("fr:feu", "P5191", ("lex", "la:focus"))
    lex_prop("en:colour", "P5191", ("lex", "fr:couleur"))
    for whole, parts in [("de:Apfelbaum", ["de:Apfel", "de:Baum"]),
                         ("en:housecat", ["en:house", "en:cat"]),
                         ("zh:火山", ["zh:火", "zh:山"])]:
        for p in parts:
            lex_prop(whole, "P5238", ("lex", p))
    for a, b in [("en:fire", "en:fire#v"), ("en:milk", "en:milk#v")]:
        lex_prop(a, "P5402", ("lex", b))
        lex_prop(b, "P5402", ("lex", a))
    for key, v in [("en:eat", "transitive"), ("en:devour", "transitive"),
                   ("en:run", "intransitive"), ("en:jog", "intransitive")]:
        lex_prop(key, "P5526", I(v + " valency"))
    sense_prop("de:Wasser", "P5713", ("item", SINGULAR))
    sense_prop("fr:eau", "P5713", ("item", PLURAL))
    for key, v in [("de:Apfel", "German noun class with umlaut plural"),
                   ("de:Hund", "German noun class with -e plural"),
                   ("de:Katze", "German noun class with -n plural"),
                   ("de:Baum", "German noun class with umlaut plural")]:
        lex_prop(key, "P5911", I(v))
    lex_prop("cs:běžet", "P7486", I("imperfective aspect"))
    lex_prop("cs:jíst", "P7486", I("imperfective aspect"))
    lex_prop("cs:sníst", "P7486", I("perfective aspect"))
    sense_prop("en:eat", "P9970", I("eating"))
    sense_prop("en:run", "P9970", I("running"))
    # Historical
    for key, v in [("en:apple", "Early English Glossary"), ("en:water", "Early English Glossary"),
                   ("en:dog", "Old Household Chronicle"), ("de:Apfel", "Old Household Chronicle")]:
        lex_prop(key, "P5323", I(v))
    for key, v in [("en:color", "fourteenth-century manuscript"),
                   ("en:dog", "eleventh-century gloss"), ("en:apple", "ninth-century gloss")]:
        lex_prop(key, "P6684", I(v))
    # Syntactic
    sense_prop("zh:山", "P5978", ("lex", "zh:座"))
    sense_prop("zh:火山", "P5978", ("lex", "zh:座"))
    sense_prop("zh:火", "P5978", ("lex", "zh:个"))
    sense_prop("de:Semmel", "P6084", ("item", "Q40"))
    sense_prop("de:Brötchen", "P6084", ("item", "Q183"))
    sense_prop("en:colour", "P6084", ("item", "Q145"))
    for key, text, lang in [("de:Apfel", "Der Apfel ist rot.", "de"),
                            ("en:apple", "She ate an apple.", "en"),
                            ("fr:pomme", "La pomme est rouge.", "fr"),
                            ("en:house", "The house is old.", "en"),
                            ("cs:jablko", "Jablko je červené.", "cs")]:
        sense_prop(key, "P5831", ("mono", text, lang))
    lex_prop("en:-ness", "P5923", ("item", NOUN))
    lex_prop("en:-ly", "P5923", ("item", ADV))
    lex_prop("en:gift", "P5976", ("lex", "de:Gift"))
    lex_prop("de:Gift", "P5976", ("lex", "en:gift"))
    # Semantic
    for a, b in [("en:big", "en:large"), ("en:cat", "en:housecat")]:
        sense_prop(a, "P5973", ("sense", b, 0))
        sense_prop(b, "P5973", ("sense", a, 0))
    for a, b in [("en:big", "en:small"), ("en:large", "en:small"), ("de:groß", "de:klein")]:
        sense_prop(a, "P5974", ("sense", b, 0))
        sense_prop(b, "P5974", ("sense", a, 0))
    sense_prop("en:jog", "P5975", ("sense", "en:run", 0))
    sense_prop("en:devour", "P5975", ("sense", "en:eat", 0))
    lex_prop("en:color", "P11577", ("lex", "en:colour"))
    lex_prop("en:colour", "P11577", ("lex", "en:color"))
    sense_prop("en:solar", "P8471", ("sense", "en:sun", 0))
    sense_prop("en:lunar", "P8471", ("sense", "en:moon", 0))
    # Orthographic / phonetic
    lex_prop("zh:火山", "P5425", ("lex", "zh:火"))
    lex_prop("zh:火山", "P5425", ("lex", "zh:山"))
    for key, i, ipa in [("en:apple", 0, "ˈæp.əl"), ("en:apple", 1, "ˈæp.əlz"),
                        ("de:Apfel", 0, "ˈap͡fl̩"), ("de:Apfel", 1, "ˈɛp͡fl̩"),
                        ("en:water", 0, "ˈwɔː.tə"), ("en:dog", 0, "dɒɡ"), ("de:Hund", 0, "hʊnt"),
                        ("fr:pomme", 0, "pɔm"), ("en:color", 0, "ˈkʌl.ɚ"),
                        ("en:colour", 0, "ˈkʌl.ə"), ("en:cat", 0, "kæt"),
                        ("de:Katze", 0, "ˈkat͡sə"), ("fr:chat", 0, "ʃa"),
                        ("cs:jablko", 0, "ˈjablko"), ("en:house", 0, "haʊs"),
                        ("en:run", 0, "ɹʌn")]:
        form_prop(key, "P898", ("str", ipa), i)
    form_prop("en:apple", "P2859", ("str", "{p@l"))
    form_prop("de:Apfel", "P2859", ("str", "apf@l"))
    for key, spa in [("cs:jablko", "jȧblko"), ("cs:voda", "voda"), ("cs:pes", "pes"),
                     ("cs:kočka", "kočka")]:
        form_prop(key, "P5276", ("str", spa))
    for key, text, lang in [("en:apple", "AP-əl", "en"), ("de:Apfel", "AP-fel", "de"),
                            ("en:color", "KUL-er", "en"), ("en:house", "HOWSS", "en")]:
        form_prop(key, "P7243", ("mono", text, lang))
    # Translation (P5972 is filled in with the noun and adjective senses)
    form_prop("en:color", "P7481", ("item", "Q7976"))
    form_prop("en:colour", "P7481", ("item", "Q7979"))
    # Stylistic
    sense_prop("en:housecat", "P6191", I("colloquial style"))
    sense_prop("de:Semmel", "P6191", I("regional style"))
    sense_prop("en:pack", "P6571", ("lex", "en:dog"))
    sense_prop("en:clowder", "P6571", ("lex", "en:cat"))
    form_prop("zh:火", "P5426", I("third tone"))
    form_prop("zh:山", "P5426", I("first tone"))
    form_prop("zh:个", "P5426", I("fourth tone"))
    # Pool properties used by the multi-property templates
    for key in ["en:apple", "en:dog", "de:Apfel", "de:Hund", "fr:pomme", "en:color",
                "fr:manger", "en:run", "cs:běžet"]:
        lex_prop(key, "P1343", I("Desk Dictionary of Common Words"))
    lex_prop("en:gift", "P1889", ("lex", "de:Gift"))
    lex_prop("de:Gift", "P1889", ("lex", "en:gift"))
    lex_prop("en:color", "P460", ("lex", "en:colour"))


def assign_ids():
    for n, lx in enumerate(ORDER, 1):
        lx.lid = "L%d" % n


def term(value):
    kind = value[0]
    if kind == "item":
        return "wd:" + value[1]
    if kind == "lex":
        return "wd:" + LEX[value[1]].lid
    if kind == "sense":
        return "wd:%s-S%d" % (LEX[value[1]].lid, value[2] + 1)
    if kind == "str":
        return lit(value[1])
    if kind == "mono":
        return lit(value[1], value[2])
    raise ValueError(value)


def lit(text, lang=None):
    s = '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return s + ("@" + lang if lang else "")


def write_snapshot(path):
    lines = [
        "# Desk-scale lexeme snapshot in the Wikidata RDF layout.",
        "# Synthetic: items labelled 'desk:...' are placeholders, and several",
        "# property values exist only to exercise the query templates.",
    ]
    used_items = set()

    def emit(s, p, o):
        lines.append("%s %s %s ." % (s, p, o))
        if o.startswith("wd:Q"):
            used_items.add(o[3:])

    for lx in ORDER:
        s = "wd:" + lx.lid
        emit(s, "a", "ontolex:LexicalEntry")
        emit(s, "wikibase:lemma", lit(lx.lemma, lx.lang))
        emit(s, "dct:language", "wd:" + LANG_QID[lx.lang])
        emit(s, "wikibase:lexicalCategory", "wd:" + lx.category)
        for pid, values in sorted(lx.props.items()):
            for v in values:
                emit(s, "wdt:" + pid, term(v))
        for i, (rep, feats, props) in enumerate(lx.forms, 1):
            f = "%s-F%d" % (s, i)
            emit(s, "ontolex:lexicalForm", f)
            emit(f, "a", "ontolex:Form")
            emit(f, "ontolex:representation", lit(rep, lx.lang))
            for q in feats:
                emit(f, "wikibase:grammaticalFeature", "wd:" + q)
            for pid, values in sorted(props.items()):
                for v in values:
                    emit(f, "wdt:" + pid, term(v))
        for i, (gloss, props) in enumerate(lx.senses, 1):
            se = "%s-S%d" % (s, i)
            emit(s, "ontolex:sense", se)
            emit(se, "a", "ontolex:LexicalSense")
            emit(se, "skos:definition", lit(gloss, "en"))
            for pid, values in sorted(props.items()):
                for v in values:
                    emit(se, "wdt:" + pid, term(v))
    for qid in sorted(used_items | set(LANG_QID.values()), key=lambda q: int(q[1:])):
        emit("wd:" + qid, "rdfs:label", lit(ITEMS[qid], "en"))
    for qid, code, _ in LANGUAGES:
        native = {"de": "Deutsch", "fr": "français", "cs": "čeština", "eu": "euskara",
                  "la": "lingua Latina", "zh": "中文"}.get(code)
        if native:
            emit("wd:" + qid, "rdfs:label", lit(native, code))
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    return len(lines) - 3


# ---------------------------------------------------------------------------
# Catalog

LABEL_SERVICE = """  SERVICE wikibase:label { 
    bd:serviceParam wikibase:language 'en' 
  }"""

LANG_LABEL = "?lang rdfs:label ?language . FILTER(LANG(?language) = 'en')"
WORD_BINDS = "BIND(STR(?lemma) AS ?word) BIND(LANG(?lemma) AS ?code)"


class Tpl:
    def __init__(self, tid, paradigm, dims, answer, tags, props, variants, body, population,
                 rewrite=None, reconstructed=True, note=None):
        self.__dict__.update(locals())
        del self.__dict__["self"]

    def render(self):
        out = ["=== " + self.tid, "paradigm: " + self.paradigm, "dimensions: " + self.dims,
               "answer: " + self.answer, "tags: " + " ".join(self.tags)]
        if self.props:
            out.append("properties: " + " ".join(sorted(self.props, key=lambda p: int(p[1:]))))
        out.append("reconstructed: " + ("yes" if self.reconstructed else "no"))
        if self.note:
            out.append("note: " + self.note)
        out.append("--- variants")
        out += self.variants
        out.append("--- sparql")
        out += self.body.split("\n")
        out.append("--- population")
        out.append(self.population)
        if self.rewrite:
            out.append("--- ask_rewrite")
            out.append("answer_var: " + self.rewrite[0])
            out.append("pattern: " + self.rewrite[1])
        return "\n".join(out) + "\n"


SINGLE_TAGS = ["word:lemma", "code:language_code", "language:free_text"]
MULTI_TAGS = ["language_qid:language_qid", "language:free_text"]

# Variable carrying the answer, per range
RANGE_VAR = {"q_item": "qitem", "lexeme": "relatedLexeme", "sense": "relatedSense",
             "string": "value", "monolingual_text": "value"}
ARCHETYPE = {("lexeme", "q_item"): 1, ("lexeme", "lexeme"): 2, ("lexeme", "sense"): 2,
             ("lexeme", "string"): 3, ("lexeme", "monolingual_text"): 3,
             ("sense", "q_item"): 4, ("sense", "lexeme"): 5, ("sense", "sense"): 5,
             ("sense", "string"): 6, ("sense", "monolingual_text"): 6,
             ("form", "q_item"): 7, ("form", "lexeme"): 8, ("form", "sense"): 8,
             ("form", "string"): 9, ("form", "monolingual_text"): 9}


def property_body(pid, attach, rng, anchor, value=None):
    """SPARQL for one property archetype. `anchor` is 'single' (VALUES on
    the lemma) or 'multi' (all lexemes of a language). With `value`, the
    object is that constant and the query is an ASK."""
    obj = value if value else "?" + RANGE_VAR[rng]
    if anchor == "single":
        lines = ["  VALUES ?lemma {'{word}'@{code}} .", "  ?lexeme wikibase:lemma ?lemma ;"]
    else:
        lines = ["  ?lexeme dct:language wd:{language_qid} ;",
                 "          wikibase:lemma ?lemma ;"]
    if attach == "lexeme":
        lines.append("          wdt:%s %s." % (pid, obj))
        subject_vars = ["?lexeme", "?lemma"]
    elif attach == "sense":
        lines.append("          ontolex:sense ?sense.")
        lines.append("  ?sense wdt:%s %s." % (pid, obj))
        subject_vars = ["?lexeme", "?sense"]
    else:
        lines.append("          ontolex:lexicalForm ?form.")
        lines.append("  ?form ontolex:representation ?representation ;")
        lines.append("        wdt:%s %s." % (pid, obj))
        subject_vars = ["?form", "?representation"]
    if value:
        return "ASK\nWHERE\n{\n" + "\n".join(lines) + "\n}"
    if rng == "q_item":
        if attach == "lexeme":
            head = "?lexeme ?qitem ?lemma ?qitemLabel"
        else:
            head = " ".join(subject_vars + ["?qitem", "?qitemLabel"])
        lines.append(LABEL_SERVICE)
    elif rng == "lexeme":
        head = " ".join(subject_vars + ["?relatedLexeme", "?relatedLemma"])
        lines.append("  ?relatedLexeme wikibase:lemma ?relatedLemma.")
    elif rng == "sense":
        head = " ".join(subject_vars + ["?relatedSense", "?relatedLemma"])
        lines.append("  ?relatedLexeme ontolex:sense ?relatedSense ;")
        lines.append("                 wikibase:lemma ?relatedLemma.")
    else:
        head = " ".join(subject_vars + ["?value"])
    return "SELECT %s\nWHERE\n{\n%s\n}" % (head, "\n".join(lines))


def property_path(pid, attach, obj="?x"):
    if attach == "lexeme":
        return "?lexeme wdt:%s %s ." % (pid, obj)
    if attach == "sense":
        return "?lexeme ontolex:sense ?s . ?s wdt:%s %s ." % (pid, obj)
    return "?lexeme ontolex:lexicalForm ?f . ?f wdt:%s %s ." % (pid, obj)


def single_population(pid, attach):
    return ("SELECT DISTINCT ?word ?code ?language WHERE { ?lexeme wikibase:lemma ?lemma ; "
            "dct:language ?lang . %s %s %s }" % (property_path(pid, attach), LANG_LABEL,
                                                 WORD_BINDS))


def multi_population(pid, attach):
    return ("SELECT DISTINCT ?language_qid ?language WHERE { ?lexeme dct:language "
            "?language_qid . %s ?language_qid rdfs:label ?language . "
            "FILTER(LANG(?language) = 'en') }" % property_path(pid, attach))


def ask_population(pid, attach, rng):
    if rng == "q_item":
        extra = "?value rdfs:label ?value_label . FILTER(LANG(?value_label) = 'en')"
        cols, obj = "?value ?value_label", "?value"
    elif rng == "lexeme":
        extra = "?value wikibase:lemma ?vl . BIND(STR(?vl) AS ?value_label)"
        cols, obj = "?value ?value_label", "?value"
    elif rng == "sense":
        extra = "?vlex ontolex:sense ?value ; wikibase:lemma ?vl . BIND(STR(?vl) AS ?value_label)"
        cols, obj = "?value ?value_label", "?value"
    elif rng == "string":
        extra = "BIND(STR(?x) AS ?value) BIND(STR(?x) AS ?value_label)"
        cols, obj = "?value ?value_label", "?x"
    else:
        extra = ("BIND(STR(?x) AS ?value) BIND(STR(?x) AS ?value_label) "
                 "BIND(LANG(?x) AS ?value_lang)")
        cols, obj = "?value ?value_label ?value_lang", "?x"
    return ("SELECT DISTINCT ?word ?code ?language %s WHERE { ?lexeme wikibase:lemma ?lemma ; "
            "dct:language ?lang . %s %s %s %s }" % (cols, property_path(pid, attach, obj), extra,
                                                    LANG_LABEL, WORD_BINDS))


def property_templates():
    out = []
    for pid, label, _, attach, rng, phrase in PROPERTIES:
        n = ARCHETYPE[(attach, rng)]
        lingo = "multi" if pid in MULTI_LINGUAL else "mono"
        variants = [
            "What is the %s of '{word}' in {language}?" % phrase,
            "{word} %s in {language}" % phrase,
            "Tell me the %s of the {language} word '{word}'." % phrase,
        ]
        if pid == "P5185":
            variants = ["What is the gender of '{word}' in {language}?",
                        "{word} gender in {language}", "{word} gender {language}",
                        "What is the grammatical gender of the {language} word '{word}'?"]
        out.append(Tpl("t%d_%s" % (n, pid), "property", "single %s simple" % lingo, "select",
                       SINGLE_TAGS, [pid], variants, property_body(pid, attach, rng, "single"),
                       single_population(pid, attach),
                       rewrite=(RANGE_VAR[rng],
                                "Is the %s of '{word}' in {language} {answer}?" % phrase),
                       reconstructed=not (pid == "P5185")))
        if rng == "string":
            value, vtags = "'{value}'", ["value:property_value", "value_label:free_text"]
        elif rng == "monolingual_text":
            value = "'{value}'@{value_lang}"
            vtags = ["value:property_value", "value_label:free_text",
                     "value_lang:language_code"]
        else:
            value, vtags = "wd:{value}", ["value:property_value", "value_label:free_text"]
        out.append(Tpl("ask_t%d_%s" % (n, pid), "property", "single %s simple" % lingo, "ask",
                       SINGLE_TAGS + vtags, [pid],
                       ["Is the %s of '{word}' in {language} {value_label}?" % phrase,
                        "Does the {language} word '{word}' have the %s {value_label}?" % phrase],
                       property_body(pid, attach, rng, "single", value),
                       ask_population(pid, attach, rng)))
        out.append(Tpl("multi_t%d_%s" % (n, pid), "property", "multi %s simple" % lingo,
                       "select", MULTI_TAGS, [pid],
                       ["Which {language} words have a %s?" % phrase,
                        "List {language} lexemes together with their %s." % phrase,
                        "Show the %s of every {language} word that has one." % phrase],
                       property_body(pid, attach, rng, "multi"), multi_population(pid, attach)))
    for pid in ["P898", "P2859", "P5276", "P7243"]:
        _, label, _, attach, rng, phrase = next(p for p in PROPERTIES if p[0] == pid)
        base = property_body(pid, attach, rng, "single")
        out.append(Tpl("limit_t9_%s" % pid, "property", "single mono simple", "select",
                       SINGLE_TAGS, [pid],
                       ["Give me one %s of '{word}' in {language}." % phrase,
                        "Just one %s for the {language} word '{word}', please." % phrase],
                       base + "\nLIMIT 1", single_population(pid, attach)))
        out.append(Tpl("order_t9_%s" % pid, "property", "single mono simple", "select",
                       SINGLE_TAGS, [pid],
                       ["List the %s values of '{word}' in {language} in order." % phrase,
                        "Sorted %s of the {language} word '{word}'" % phrase],
                       base + "\nORDER BY ?value", single_population(pid, attach)))
    return out


def google_templates():
    T = []

    def g(n, dims, tags, props, variants, body, population, reconstructed=True):
        T.append(Tpl("q%d" % n, "google", dims, "select", tags, props, variants, body,
                     population, reconstructed=reconstructed))

    en_word = ["word:lemma"]
    en_pop = ("SELECT DISTINCT ?word WHERE { ?lexeme dct:language wd:Q1860 ; "
              "wikibase:lemma ?lemma . %s BIND(STR(?lemma) AS ?word) }")

    g(1, "single mono simple", en_word, [],
      ["what is the definition of {word}", "define {word}", "what does {word} mean"],
      """SELECT ?lexeme ?sense ?gloss
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:sense ?sense.
  ?sense skos:definition ?gloss.
  FILTER(LANG(?gloss) = 'en')
}""", en_pop % "?lexeme ontolex:sense ?s . ?s skos:definition ?g . FILTER(LANG(?g) = 'en')")
    g(2, "single mono simple", en_word, [],
      ["what is the plural of {word}", "plural form of {word}", "{word} plural"],
      """SELECT ?lexeme ?form ?plural
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:lexicalForm ?form.
  ?form wikibase:grammaticalFeature wd:Q146786 ;
        ontolex:representation ?plural.
}""", en_pop % "?lexeme ontolex:lexicalForm ?f . ?f wikibase:grammaticalFeature wd:Q146786 .")
    g(3, "single mono simple", en_word, ["P898"],
      ["how do you pronounce {word}", "IPA of {word}", "pronunciation of the word {word}"],
      """SELECT ?lexeme ?form ?ipa
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:lexicalForm ?form.
  ?form wdt:P898 ?ipa.
}""", en_pop % "?lexeme ontolex:lexicalForm ?f . ?f wdt:P898 ?x .")
    for n, pid, name in [(4, "P5973", "synonym"), (5, "P5974", "antonym")]:
        g(n, "single mono simple", en_word, [pid],
          ["what is a %s for {word}" % name, "another word for {word}" if n == 4
           else "opposite of {word}", "%s of {word}" % name],
          """SELECT ?lexeme ?%(v)sLemma
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:sense ?sense.
  ?sense wdt:%(pid)s ?%(v)sSense.
  ?%(v)sLexeme ontolex:sense ?%(v)sSense ;
  %(pad)s wikibase:lemma ?%(v)sLemma.
}""" % {"v": name, "pid": pid, "pad": " " * (len(name) + 8)},
          en_pop % ("?lexeme ontolex:sense ?s . ?s wdt:%s ?x ." % pid))
    g(6, "single multi simple", ["word:lemma", "target:free_text", "target_qid:language_qid"],
      ["P5972"],
      ["how do you say {word} in {target}", "{word} in {target}",
       "translate {word} to {target}"],
      """SELECT ?lexeme ?translationLemma
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:sense ?sense.
  ?sense wdt:P5972 ?translationSense.
  ?translationLexeme ontolex:sense ?translationSense ;
                     dct:language wd:{target_qid} ;
                     wikibase:lemma ?translationLemma.
}""", "SELECT DISTINCT ?word ?target ?target_qid WHERE { ?lexeme dct:language wd:Q1860 ; "
      "wikibase:lemma ?lemma ; ontolex:sense ?s . ?s wdt:P5972 ?ts . ?tl ontolex:sense ?ts ; "
      "dct:language ?target_qid . ?target_qid rdfs:label ?target . "
      "FILTER(LANG(?target) = 'en') BIND(STR(?lemma) AS ?word) }")
    g(7, "single mono simple", en_word, [],
      ["what part of speech is {word}", "is {word} a noun or a verb",
       "word class of {word}"],
      """SELECT ?lexeme ?category ?categoryLabel
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          wikibase:lexicalCategory ?category.
%s
}""" % LABEL_SERVICE, en_pop % "")
    g(8, "single mono simple", en_word, ["P5191"],
      ["what language does the word {word} come from", "origin of the word {word}",
       "{word} etymology language"],
      """SELECT ?lexeme ?origin ?originLanguage ?originLanguageLabel
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          wdt:P5191 ?origin.
  ?origin dct:language ?originLanguage.
%s
}""" % LABEL_SERVICE, en_pop % "?lexeme wdt:P5191 ?x .")
    g(9, "multi mono simple", en_word, [],
      ["what are the forms of {word}", "inflections of {word}", "all forms of the word {word}"],
      """SELECT ?lexeme ?form ?representation
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:lexicalForm ?form.
  ?form ontolex:representation ?representation.
}""", en_pop % "")
    g(10, "single mono simple", en_word, [],
      ["what is the past tense of {word}", "past tense of {word}", "{word} in the past tense"],
      """SELECT ?lexeme ?form ?pastTense
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:lexicalForm ?form.
  ?form wikibase:grammaticalFeature wd:Q1994301 ;
        ontolex:representation ?pastTense.
}""", en_pop % "?lexeme ontolex:lexicalForm ?f . ?f wikibase:grammaticalFeature wd:Q1994301 .")
    g(11, "single mono simple", SINGLE_TAGS, [],
      ["meaning of {word} in {language}", "what does {word} mean in {language}",
       "definition of the {language} word {word}"],
      """SELECT ?lexeme ?sense ?gloss
WHERE
{
  VALUES ?lemma {'{word}'@{code}} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:sense ?sense.
  ?sense skos:definition ?gloss.
}""", "SELECT DISTINCT ?word ?code ?language WHERE { ?lexeme wikibase:lemma ?lemma ; "
      "dct:language ?lang ; ontolex:sense ?s . ?s skos:definition ?g . %s %s }"
      % (LANG_LABEL, WORD_BINDS))
    g(12, "multi multi simple", SINGLE_TAGS, ["P5191"],
      ["what words come from the {language} word {word}",
       "words derived from {word} in {language}", "descendants of the {language} word {word}"],
      """SELECT ?derived ?derivedLemma
WHERE
{
  VALUES ?lemma {'{word}'@{code}} .
  ?lexeme wikibase:lemma ?lemma.
  ?derived wdt:P5191 ?lexeme ;
           wikibase:lemma ?derivedLemma.
}""", "SELECT DISTINCT ?word ?code ?language WHERE { ?d wdt:P5191 ?lexeme . "
      "?lexeme wikibase:lemma ?lemma ; dct:language ?lang . %s %s }" % (LANG_LABEL, WORD_BINDS))
    g(13, "multi mono simple", SINGLE_TAGS, ["P5238"],
      ["compound words containing {word} in {language}",
       "which {language} words are made from {word}", "{language} compounds with {word}"],
      """SELECT ?compound ?compoundLemma
WHERE
{
  VALUES ?lemma {'{word}'@{code}} .
  ?lexeme wikibase:lemma ?lemma.
  ?compound wdt:P5238 ?lexeme ;
            wikibase:lemma ?compoundLemma.
}""", "SELECT DISTINCT ?word ?code ?language WHERE { ?c wdt:P5238 ?lexeme . "
      "?lexeme wikibase:lemma ?lemma ; dct:language ?lang . %s %s }" % (LANG_LABEL, WORD_BINDS))
    g(14, "single mono complex", SINGLE_TAGS, ["P898", "P2859"],
      ["IPA and X-SAMPA of {word} in {language}",
       "how is the {language} word {word} transcribed", "phonetic spelling of {word} ({language})"],
      """SELECT ?form ?representation ?ipa ?xsampa
WHERE
{
  VALUES ?lemma {'{word}'@{code}} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:lexicalForm ?form.
  ?form ontolex:representation ?representation ;
        wdt:P898 ?ipa.
  OPTIONAL { ?form wdt:P2859 ?xsampa . }
}""", single_population("P898", "form"))
    g(15, "single mono simple", SINGLE_TAGS, ["P5185"],
      ["is {word} a masculine or feminine noun in {language}",
       "word class and gender of {word} in {language}", "{language} {word} noun gender"],
      """SELECT ?lexeme ?category ?gender ?categoryLabel ?genderLabel
WHERE
{
  VALUES ?lemma {'{word}'@{code}} .
  ?lexeme wikibase:lemma ?lemma ;
          wikibase:lexicalCategory ?category ;
          wdt:P5185 ?gender.
%s
}""" % LABEL_SERVICE, single_population("P5185", "lexeme"))
    g(16, "multi multi simple", en_word, ["P5137"],
      ["{word} in French, German and Basque",
       "how do you say {word} in French, German and Basque",
       "French, German and Basque words for {word}"],
      """SELECT ?otherLemma ?languageLabel
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  VALUES ?language { wd:Q150 wd:Q188 wd:Q8752 } .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:sense ?sense.
  ?sense wdt:P5137 ?concept.
  ?otherSense wdt:P5137 ?concept.
  ?otherLexeme ontolex:sense ?otherSense ;
               dct:language ?language ;
               wikibase:lemma ?otherLemma.
%s
}""" % LABEL_SERVICE,
      en_pop % "?lexeme ontolex:sense ?s . ?s wdt:P5137 ?c . ?o wdt:P5137 ?c . "
               "?ol ontolex:sense ?o ; dct:language wd:Q150 .")
    g(17, "single multi simple", SINGLE_TAGS, ["P5137"],
      ["what does the {language} word {word} mean in English",
       "English meaning of {word} ({language})", "{word} is {language} for what"],
      """SELECT ?lexeme ?sense ?qitem ?qitemLabel
WHERE
{
  VALUES ?lemma {'{word}'@{code}} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:sense ?sense.
  ?sense wdt:P5137 ?qitem.
%s
}""" % LABEL_SERVICE, single_population("P5137", "sense"))
    g(18, "single mono complex", SINGLE_TAGS, ["P5831", "P6084"],
      ["use the {language} word {word} in a sentence", "example sentence with {word} in {language}",
       "how is {word} used in {language}"],
      """SELECT ?sense ?example ?region
WHERE
{
  VALUES ?lemma {'{word}'@{code}} .
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:sense ?sense.
  ?sense wdt:P5831 ?example.
  OPTIONAL { ?sense wdt:P6084 ?region . }
}""", single_population("P5831", "sense"))
    g(19, "single mono complex", en_word, ["P6684", "P5323"],
      ["when was the word {word} first used", "first recorded use of {word}",
       "earliest attestation of {word}"],
      """SELECT ?lexeme ?source ?sourceLabel ?work ?workLabel
WHERE
{
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          wdt:P6684 ?source.
  OPTIONAL { ?lexeme wdt:P5323 ?work . }
%s
}""" % LABEL_SERVICE, en_pop % "?lexeme wdt:P6684 ?x .")
    g(20, "single mono simple", en_word, ["P5191"],
      ["where does the word {word} come from?", "what is the origin of {word}?",
       "etymology of {word}"],
      """SELECT ?etonymLexeme ?qitemLanguageOfOrigin 
       ?etonym ?qitemLanguageOfOriginLabel
WHERE {
  VALUES ?lemma {'{word}'@en} .
  ?lexeme wikibase:lemma ?lemma ;
          wdt:P5191 ?etonymLexeme.
  ?etonymLexeme dct:language ?qitemOrigin;
                wikibase:lemma ?etonym .
%s
}""" % LABEL_SERVICE, en_pop % "?lexeme wdt:P5191 ?x .", reconstructed=False)
    g(21, "multi mono simple", MULTI_TAGS + ["prefix:free_text"], [],
      ["{language} words starting with {prefix}", "which {language} words begin with {prefix}",
       "list {language} lexemes whose lemma starts with {prefix}"],
      """SELECT ?lexeme ?lemma
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lemma ?lemma.
  FILTER(STRSTARTS(STR(?lemma), '{prefix}'))
}""", "SELECT DISTINCT ?language_qid ?language ?prefix WHERE { ?lexeme dct:language "
      "?language_qid ; wikibase:lemma ?lemma . ?language_qid rdfs:label ?language . "
      "FILTER(LANG(?language) = 'en') BIND(SUBSTR(STR(?lemma), 1, 2) AS ?prefix) }")
    T[19].note = "utterance and query kept verbatim"
    return T


def language_independent_templates():
    T = []
    any_pop = ("SELECT DISTINCT ?word WHERE { ?lexeme wikibase:lemma ?lemma . %s "
               "BIND(STR(?lemma) AS ?word) }")
    head = """  ?lexeme wikibase:lemma ?lemma ;
          dct:language ?language"""

    def li(n, dims, tags, props, variants, body, population):
        T.append(Tpl("li%d" % n, "language_independent", dims, "select", tags, props,
                     variants, body, population))

    li(1, "multi multi simple", ["word:lemma"], [],
       ["which languages have the word {word}", "{word} in any language",
        "lexemes spelled {word} in every language"],
       """SELECT ?lexeme ?lemma ?language ?languageLabel
WHERE
{
%s.
  FILTER(STR(?lemma) = '{word}')
%s
}""" % (head, LABEL_SERVICE), any_pop % "")
    for n, cat, name in [(2, NOUN, "noun"), (3, VERB, "verb"), (4, ADJ, "adjective")]:
        li(n, "multi multi simple", ["word:lemma"], [],
           ["%ss spelled {word} in any language" % name,
            "is {word} a %s in some language" % name,
            "all %s lexemes with the lemma {word}" % name],
           """SELECT ?lexeme ?lemma ?language ?languageLabel
WHERE
{
%s ;
          wikibase:lexicalCategory wd:%s.
  FILTER(STR(?lemma) = '{word}')
%s
}""" % (head, cat, LABEL_SERVICE), any_pop % ("?lexeme wikibase:lexicalCategory wd:%s ." % cat))
    li(5, "multi multi simple", ["word:lemma"], [],
       ["which words have the plural form {word}", "{word} is the plural of what",
        "singular of {word} in any language"],
       """SELECT ?lexeme ?lemma ?form
WHERE
{
  ?lexeme wikibase:lemma ?lemma ;
          ontolex:lexicalForm ?form.
  ?form ontolex:representation ?representation ;
        wikibase:grammaticalFeature wd:Q146786.
  FILTER(STR(?representation) = '{word}')
}""", "SELECT DISTINCT ?word WHERE { ?lexeme ontolex:lexicalForm ?f . ?f "
       "wikibase:grammaticalFeature wd:Q146786 ; ontolex:representation ?r . "
       "BIND(STR(?r) AS ?word) }")
    li(6, "multi multi simple", ["word:lemma"], ["P5185"],
       ["gender of {word} in every language", "what gender is {word} in each language",
        "{word} grammatical gender across languages"],
       """SELECT ?lexeme ?language ?qitem ?qitemLabel
WHERE
{
%s ;
          wdt:P5185 ?qitem.
  FILTER(STR(?lemma) = '{word}')
%s
}""" % (head, LABEL_SERVICE), any_pop % "?lexeme wdt:P5185 ?g .")
    li(7, "multi mono simple", ["word:lemma"] + MULTI_TAGS, [],
       ["{language} lexemes spelled {word}", "is {word} a {language} word",
        "find {word} among {language} lemmas"],
       """SELECT ?lexeme ?lemma ?category
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lemma ?lemma ;
          wikibase:lexicalCategory ?category.
  FILTER(STR(?lemma) = '{word}')
}""", "SELECT DISTINCT ?word ?language_qid ?language WHERE { ?lexeme wikibase:lemma ?lemma ; "
      "dct:language ?language_qid . ?language_qid rdfs:label ?language . "
      "FILTER(LANG(?language) = 'en') BIND(STR(?lemma) AS ?word) }")
    li(8, "single mono simple", ["word:lemma"] + MULTI_TAGS, [],
       ["past tense of the {language} verb {word}", "{language} {word} in the past tense",
        "how do you say {word} in the past in {language}"],
       """SELECT ?lexeme ?form ?pastTense
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lemma ?lemma ;
          ontolex:lexicalForm ?form.
  ?form wikibase:grammaticalFeature wd:Q1994301 ;
        ontolex:representation ?pastTense.
  FILTER(STR(?lemma) = '{word}')
}""", "SELECT DISTINCT ?word ?language_qid ?language WHERE { ?lexeme wikibase:lemma ?lemma ; "
      "dct:language ?language_qid ; ontolex:lexicalForm ?f . ?f wikibase:grammaticalFeature "
      "wd:Q1994301 . ?language_qid rdfs:label ?language . FILTER(LANG(?language) = 'en') "
      "BIND(STR(?lemma) AS ?word) }")
    return T


def rule_based_templates():
    T = []
    lang_pop = ("SELECT DISTINCT ?language_qid ?language %s WHERE { ?lexeme dct:language "
                "?language_qid ; wikibase:lemma ?lemma . %s ?language_qid rdfs:label ?language . "
                "FILTER(LANG(?language) = 'en') %s }")

    def r(n, tags, props, variants, body, population):
        T.append(Tpl("r%d" % n, "rule_based", "multi mono simple", "select", tags, props,
                     variants, body, population))

    r(1, MULTI_TAGS, [],
      ["Find at most 50 longest words in {language}", "longest {language} words",
       "the 50 longest lemmas in {language}"],
      """SELECT ?lexeme ?lemma ?length
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lemma ?lemma.
  BIND(STRLEN(?lemma) AS ?length)
}
ORDER BY DESC(?length)
LIMIT 50""", lang_pop % ("", "", ""))
    r(2, MULTI_TAGS, [],
      ["List at most 50 onomatopoeia in {language}", "{language} onomatopoeic words",
       "sound words in {language}"],
      """SELECT ?lexeme ?lemma
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lexicalCategory wd:Q170239 ;
          wikibase:lemma ?lemma.
}
LIMIT 50""", lang_pop % ("", "?lexeme wikibase:lexicalCategory wd:Q170239 .", ""))
    r(3, MULTI_TAGS + ["prefix:free_text"], [],
      ["Find at most 50 {language} words starting with {prefix}",
       "{language} lemmas matching ^{prefix}", "words in {language} that begin with {prefix}"],
      """SELECT ?lexeme ?lemma
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lemma ?lemma.
  FILTER(REGEX(?lemma, '^{prefix}'))
}
LIMIT 50""", lang_pop % ("?prefix", "", "BIND(SUBSTR(STR(?lemma), 1, 2) AS ?prefix)"))
    r(4, MULTI_TAGS + ["suffix:free_text"], [],
      ["Find at most 50 {language} words ending with {suffix}",
       "{language} lemmas matching {suffix}$", "words in {language} that end in {suffix}"],
      """SELECT ?lexeme ?lemma
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lemma ?lemma.
  FILTER(REGEX(?lemma, '{suffix}$'))
}
LIMIT 50""", lang_pop % ("?suffix", "FILTER(STRLEN(?lemma) >= 3)",
                         "BIND(SUBSTR(STR(?lemma), STRLEN(?lemma) - 1) AS ?suffix)"))
    r(5, MULTI_TAGS + ["infix:free_text"], [],
      ["Find at most 50 {language} words containing {infix}",
       "{language} lemmas with {infix} inside", "words in {language} that contain {infix}"],
      """SELECT ?lexeme ?lemma
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lemma ?lemma.
  FILTER(REGEX(?lemma, '{infix}'))
}
LIMIT 50""", lang_pop % ("?infix", "FILTER(STRLEN(?lemma) >= 4)",
                         "BIND(SUBSTR(STR(?lemma), 2, 2) AS ?infix)"))
    r(6, MULTI_TAGS + ["gender:property_value", "gender_label:free_text"], ["P5185"],
      ["List at most 50 {gender_label} nouns in {language}",
       "{gender_label} {language} nouns", "{language} nouns with {gender_label} gender"],
      """SELECT ?lexeme ?lemma
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lexicalCategory wd:Q1084 ;
          wdt:P5185 wd:{gender} ;
          wikibase:lemma ?lemma.
}
LIMIT 50""", lang_pop % ("?gender ?gender_label",
                         "?lexeme wikibase:lexicalCategory wd:Q1084 ; wdt:P5185 ?gender . "
                         "?gender rdfs:label ?gender_label . FILTER(LANG(?gender_label) = 'en')",
                         ""))
    r(7, MULTI_TAGS, [],
      ["Find at most 50 shortest words in {language}", "shortest {language} words",
       "the 50 shortest lemmas in {language}"],
      """SELECT ?lexeme ?lemma ?length
WHERE
{
  ?lexeme dct:language wd:{language_qid} ;
          wikibase:lemma ?lemma.
  BIND(STRLEN(?lemma) AS ?length)
}
ORDER BY ?length
LIMIT 50""", lang_pop % ("", "", ""))
    return T


LEXEME_LEVEL = ["P5185", "P5186", "P5187", "P5191", "P5238", "P5402", "P5526", "P5911",
                "P7486", "P5323", "P6684", "P5923", "P11577", "P5425", "P1343"]
OPTIONAL_POOL = ["P1343", "P18", "P443", "P1889", "P460", "P31", "P1552", "P973", "P5185",
                 "P5191", "P6684"]


def label_of(pid):
    for p in PROPERTIES:
        if p[0] == pid:
            return p[5]
    return dict(POOL)[pid]


def multi_property_templates():
    T = []
    for multi in (False, True):
        count = 21 if multi else 22
        for i in range(count):
            first = LEXEME_LEVEL[i % len(LEXEME_LEVEL)]
            rest = []
            j = i
            while len(rest) < 1 + (i % 2):
                cand = OPTIONAL_POOL[j % len(OPTIONAL_POOL)]
                j += 3
                if cand != first and cand not in rest:
                    rest.append(cand)
            props = [first] + rest
            names = [label_of(p) for p in props]
            listing = ", ".join(names[:-1]) + " and " + names[-1]
            values = " ".join("?value%d" % (k + 1) for k in range(len(props)))
            if multi:
                lines = ["  ?lexeme dct:language wd:{language_qid} ;",
                         "          wikibase:lemma ?lemma ;",
                         "          wdt:%s ?value1." % first]
                opt = rest
                tags = MULTI_TAGS
                variants = ["List the %s of {language} lexemes." % listing,
                            "{language} words with their %s" % listing]
                population = multi_population(first, "lexeme")
                tid, dims = "mpm%d" % (i + 1), "multi mono complex"
            else:
                lines = ["  VALUES ?lemma {'{word}'@{code}} .",
                         "  ?lexeme wikibase:lemma ?lemma."]
                opt = props
                tags = SINGLE_TAGS
                variants = ["What are the %s of '{word}' in {language}?" % listing,
                            "{word} ({language}): %s" % listing]
                population = single_population(first, "lexeme")
                tid, dims = "mp%d" % (i + 1), "single mono complex"
            for k, p in enumerate(opt):
                idx = props.index(p) + 1
                lines.append("  OPTIONAL { ?lexeme wdt:%s ?value%d . }" % (p, idx))
            body = "SELECT ?lexeme ?lemma %s\nWHERE\n{\n%s\n}" % (values, "\n".join(lines))
            T.append(Tpl(tid, "multi_property", dims, "select", tags, props, variants, body,
                         population))
    return T


def write_catalog(directory):
    os.makedirs(directory, exist_ok=True)
    for f in os.listdir(directory):
        if f.endswith(".tpl"):
            os.remove(os.path.join(directory, f))
    groups = [
        ("google.tpl", google_templates()),
        ("property.tpl", property_templates()),
        ("multi_property.tpl", multi_property_templates()),
        ("language_independent.tpl", language_independent_templates()),
        ("rule_based.tpl", rule_based_templates()),
    ]
    total = 0
    for name, tpls in groups:
        with open(os.path.join(directory, name), "w", encoding="utf-8") as f:
            f.write("# generated by tools/gen_desk_data.py\n\n")
            f.write("\n".join(t.render() for t in tpls))
        total += len(tpls)
    return total


def write_csvs():
    with open(os.path.join(ROOT, "registry.csv"), "w", encoding="utf-8") as f:
        f.write("# Lexicographic properties by category, attachment and value range.\n")
        f.write("pid,label,category,attachment,range_kind\n")
        for pid, label, cat, attach, rng, _ in PROPERTIES:
            f.write('%s,"%s",%s,%s,%s\n' % (pid, label, cat, attach, rng))
    with open(os.path.join(ROOT, "languages.csv"), "w", encoding="utf-8") as f:
        f.write("qid,code,label\n")
        for qid, code, label in LANGUAGES:
            f.write("%s,%s,%s\n" % (qid, code, label))
    with open(os.path.join(ROOT, "pool.csv"), "w", encoding="utf-8") as f:
        f.write("# Properties multi-property templates may request: the classified\n"
                "# lexicographic ones plus general-purpose extras.\n")
        f.write("pid,label\n")
        for pid, label, *_ in PROPERTIES:
            f.write('%s,"%s"\n' % (pid, label))
        for pid, label in POOL:
            f.write('%s,"%s"\n' % (pid, label))
    with open(os.path.join(ROOT, "desk.conf"), "w", encoding="utf-8") as f:
        f.write("# Hermetic run against the packaged snapshot.\n"
                "endpoint = mock:desk_snapshot.nt\n"
                "catalog_path = catalog\n"
                "registry_path = registry.csv\n"
                "languages_path = languages.csv\n"
                "pool_path = pool.csv\n"
                "out_dir = ../out\n"
                "seed = 20240501\n"
                "k = 1\n"
                "check_profile = appendix_c\n"
                "scenario = non_generalization\n"
                "fewshot_examples = 2\n")


def main():
    build_lexemes()
    build_properties()
    assign_ids()
    write_csvs()
    n_triples = write_snapshot(os.path.join(ROOT, "desk_snapshot.nt"))
    n_templates = write_catalog(os.path.join(ROOT, "catalog"))
    print("lexemes=%d triples=%d templates=%d" % (len(ORDER), n_triples, n_templates))
    if n_templates != 189:
        sys.exit("expected 189 templates")


if __name__ == "__main__":
    main()
