#include "lexicon_data.hpp"

namespace cbdetect {
namespace detail {

// Frozen built-in stop word list. Do not edit without updating the pinned
// checksum in the textkit tests.
extern const char* const kStopWords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and",
    "any", "are", "aren't", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "can't", "cannot", "could",
    "couldn't", "did", "didn't", "do", "does", "doesn't", "doing", "don't", "down",
    "during", "each", "few", "for", "from", "further", "had", "hadn't", "has",
    "hasn't", "have", "haven't", "having", "he", "he'd", "he'll", "he's", "her",
    "here", "here's", "hers", "herself", "him", "himself", "his", "how", "how's",
    "i", "i'd", "i'll", "i'm", "i've", "if", "in", "into", "is", "isn't", "it",
    "it's", "its", "itself", "let's", "me", "more", "most", "mustn't", "my",
    "myself", "no", "nor", "not", "of", "off", "on", "once", "only", "or",
    "other", "ought", "our", "ours", "ourselves", "out", "over", "own", "same",
    "shan't", "she", "she'd", "she'll", "she's", "should", "shouldn't", "so",
    "some", "such", "than", "that", "that's", "the", "their", "theirs", "them",
    "themselves", "then", "there", "there's", "these", "they", "they'd",
    "they'll", "they're", "they've", "this", "those", "through", "to", "too",
    "under", "until", "up", "very", "was", "wasn't", "we", "we'd", "we'll",
    "we're", "we've", "were", "weren't", "what", "what's", "when", "when's",
    "where", "where's", "which", "while", "who", "who's", "whom", "why",
    "why's", "with", "won't", "would", "wouldn't", "you", "you'd", "you'll",
    "you're", "you've", "your", "yours", "yourself", "yourselves",
};
extern const std::size_t kStopWordCount = sizeof(kStopWords) / sizeof(kStopWords[0]);

// Frozen internet slang list.
extern const char* const kSlang[] = {
    "afaik", "asap", "bff", "brb", "btw", "cuz", "dm", "fomo", "ftw", "fyi",
    "gg", "gonna", "gotta", "gr8", "idk", "ikr", "imho", "imo", "irl", "jk",
    "lmao", "lmk", "lol", "luv", "nbd", "noob", "np", "nsfw", "omg", "omw",
    "pls", "plz", "rofl", "smh", "srsly", "tbh", "tbt", "thx", "til", "tldr",
    "ttyl", "u", "ur", "wanna", "wtf", "wth", "xoxo", "yolo", "af", "bae",
};
extern const std::size_t kSlangCount = sizeof(kSlang) / sizeof(kSlang[0]);

// Frozen sentiment lexicon (stand-in for the external sentiment system).
extern const WeightedWord kSentiment[] = {
    {"amazing", 0.9},    {"awesome", 0.9},    {"beautiful", 0.7}, {"best", 0.8},
    {"better", 0.5},     {"brilliant", 0.8},  {"celebrate", 0.6}, {"charming", 0.6},
    {"cool", 0.5},       {"delight", 0.7},    {"enjoy", 0.6},     {"epic", 0.6},
    {"excellent", 0.9},  {"excited", 0.7},    {"fantastic", 0.9}, {"favorite", 0.6},
    {"fun", 0.6},        {"genius", 0.7},     {"glad", 0.5},      {"good", 0.6},
    {"great", 0.8},      {"happy", 0.7},      {"hilarious", 0.6}, {"hope", 0.4},
    {"impressive", 0.7}, {"incredible", 0.8}, {"inspiring", 0.7}, {"love", 0.8},
    {"lovely", 0.7},     {"nice", 0.5},       {"perfect", 0.9},   {"pleasant", 0.6},
    {"proud", 0.6},      {"stunning", 0.7},   {"success", 0.6},   {"sweet", 0.5},
    {"thrilled", 0.8},   {"win", 0.6},        {"wonderful", 0.9}, {"wow", 0.6},
    {"angry", -0.7},     {"annoying", -0.6},  {"awful", -0.9},    {"bad", -0.6},
    {"boring", -0.5},    {"broken", -0.5},    {"crisis", -0.6},   {"cruel", -0.8},
    {"danger", -0.6},    {"dead", -0.7},      {"disaster", -0.8}, {"disgusting", -0.9},
    {"dreadful", -0.8},  {"fail", -0.7},      {"fear", -0.6},     {"hate", -0.8},
    {"horrible", -0.9},  {"hurt", -0.6},      {"kill", -0.8},     {"lose", -0.5},
    {"mess", -0.5},      {"nasty", -0.7},     {"pain", -0.6},     {"poor", -0.5},
    {"sad", -0.6},       {"scandal", -0.7},   {"scary", -0.6},    {"shocking", -0.6},
    {"stupid", -0.7},    {"terrible", -0.9},  {"tragedy", -0.8},  {"ugly", -0.6},
    {"upset", -0.6},     {"war", -0.6},       {"worst", -0.9},    {"wrong", -0.5},
};
extern const std::size_t kSentimentCount = sizeof(kSentiment) / sizeof(kSentiment[0]);

// Case-sensitive lookup lexicon for the fallback tagger. Covers closed-class
// words plus a handful of frequent verbs, adverbs and proper nouns.
extern const TaggedWord kTaggerLexicon[] = {
    // determiners / pronouns
    {"the", "DT"},   {"The", "DT"},   {"a", "DT"},     {"A", "DT"},
    {"an", "DT"},    {"An", "DT"},    {"this", "DT"},  {"This", "DT"},
    {"these", "DT"}, {"These", "DT"}, {"those", "DT"}, {"Those", "DT"},
    {"some", "DT"},  {"every", "DT"}, {"each", "DT"},  {"all", "PDT"},
    {"no", "DT"},    {"any", "DT"},   {"another", "DT"},
    {"i", "PRP"},    {"I", "PRP"},    {"you", "PRP"},  {"You", "PRP"},
    {"he", "PRP"},   {"He", "PRP"},   {"she", "PRP"},  {"She", "PRP"},
    {"it", "PRP"},   {"It", "PRP"},   {"we", "PRP"},   {"We", "PRP"},
    {"they", "PRP"}, {"They", "PRP"}, {"them", "PRP"}, {"him", "PRP"},
    {"her", "PRP$"}, {"his", "PRP$"}, {"its", "PRP$"}, {"my", "PRP$"},
    {"your", "PRP$"}, {"our", "PRP$"}, {"their", "PRP$"},
    // wh-words
    {"who", "WP"},   {"Who", "WP"},   {"whom", "WP"},  {"what", "WP"},
    {"What", "WP"},  {"which", "WDT"},{"Which", "WDT"},{"whose", "WP$"},
    {"when", "WRB"}, {"When", "WRB"}, {"where", "WRB"},{"Where", "WRB"},
    {"why", "WRB"},  {"Why", "WRB"},  {"how", "WRB"},  {"How", "WRB"},
    // prepositions / conjunctions / particles
    {"of", "IN"},    {"in", "IN"},    {"In", "IN"},    {"on", "IN"},
    {"On", "IN"},    {"at", "IN"},    {"by", "IN"},    {"for", "IN"},
    {"For", "IN"},   {"with", "IN"},  {"With", "IN"},  {"about", "IN"},
    {"About", "IN"}, {"from", "IN"},  {"From", "IN"},  {"into", "IN"},
    {"after", "IN"}, {"After", "IN"}, {"before", "IN"},{"over", "IN"},
    {"under", "IN"}, {"against", "IN"}, {"between", "IN"}, {"during", "IN"},
    {"without", "IN"}, {"if", "IN"},  {"If", "IN"},    {"because", "IN"},
    {"while", "IN"}, {"since", "IN"}, {"than", "IN"},  {"that", "IN"},
    {"That", "IN"},  {"as", "IN"},    {"As", "IN"},
    {"and", "CC"},   {"And", "CC"},   {"or", "CC"},    {"Or", "CC"},
    {"but", "CC"},   {"But", "CC"},   {"nor", "CC"},   {"yet", "CC"},
    {"to", "TO"},    {"To", "TO"},
    {"there", "EX"}, {"There", "EX"},
    {"not", "RB"},   {"n't", "RB"},
    // modals / auxiliaries
    {"will", "MD"},  {"Will", "MD"},  {"would", "MD"}, {"Would", "MD"},
    {"can", "MD"},   {"Can", "MD"},   {"could", "MD"}, {"Could", "MD"},
    {"may", "MD"},   {"might", "MD"}, {"must", "MD"},  {"shall", "MD"},
    {"should", "MD"},{"Should", "MD"},
    {"is", "VBZ"},   {"Is", "VBZ"},   {"are", "VBP"},  {"Are", "VBP"},
    {"was", "VBD"},  {"Was", "VBD"},  {"were", "VBD"}, {"be", "VB"},
    {"been", "VBN"}, {"being", "VBG"},{"am", "VBP"},
    {"has", "VBZ"},  {"Has", "VBZ"},  {"have", "VBP"}, {"Have", "VBP"},
    {"had", "VBD"},  {"do", "VBP"},   {"Do", "VBP"},   {"does", "VBZ"},
    {"Does", "VBZ"}, {"did", "VBD"},  {"Did", "VBD"},
    // frequent verbs (base form)
    {"tell", "VB"},  {"make", "VB"},  {"know", "VB"},  {"get", "VB"},
    {"go", "VB"},    {"see", "VB"},   {"say", "VB"},   {"take", "VB"},
    {"find", "VB"},  {"give", "VB"},  {"think", "VB"}, {"want", "VB"},
    {"need", "VB"},  {"look", "VB"},  {"use", "VB"},   {"try", "VB"},
    {"believe", "VB"}, {"stop", "VB"}, {"happen", "VB"}, {"change", "VB"},
    {"says", "VBZ"}, {"said", "VBD"}, {"made", "VBD"}, {"got", "VBD"},
    {"went", "VBD"}, {"took", "VBD"}, {"found", "VBD"},{"told", "VBD"},
    // frequent adverbs
    {"never", "RB"}, {"Never", "RB"}, {"always", "RB"},{"just", "RB"},
    {"Just", "RB"},  {"now", "RB"},   {"Now", "RB"},   {"here", "RB"},
    {"Here", "RB"},  {"so", "RB"},    {"So", "RB"},    {"very", "RB"},
    {"too", "RB"},   {"also", "RB"},  {"again", "RB"}, {"still", "RB"},
    {"really", "RB"},{"next", "JJ"},  {"more", "JJR"}, {"most", "RBS"},
    {"better", "JJR"}, {"best", "JJS"}, {"worst", "JJS"},
    // common adjectives
    {"new", "JJ"},   {"New", "JJ"},   {"good", "JJ"},  {"bad", "JJ"},
    {"big", "JJ"},   {"small", "JJ"}, {"old", "JJ"},   {"young", "JJ"},
    {"first", "JJ"}, {"First", "JJ"}, {"last", "JJ"},  {"same", "JJ"},
    {"other", "JJ"}, {"own", "JJ"},   {"real", "JJ"},  {"free", "JJ"},
    // interjections
    {"oh", "UH"},    {"wow", "UH"},   {"hey", "UH"},   {"yes", "UH"},
    // proper nouns frequent in social-media posts
    {"Apple", "NNP"},   {"iPhone", "NNP"},  {"iPad", "NNP"},    {"Google", "NNP"},
    {"Twitter", "NNP"}, {"Facebook", "NNP"},{"America", "NNP"}, {"American", "JJ"},
    {"Trump", "NNP"},   {"Obama", "NNP"},   {"London", "NNP"},  {"China", "NNP"},
    {"Chinese", "NNP"}, {"US", "NNP"},      {"UK", "NNP"},      {"BBC", "NNP"},
    // common nouns that look verbal
    {"people", "NNS"}, {"things", "NNS"}, {"thing", "NN"}, {"way", "NN"},
    {"ways", "NNS"},   {"time", "NN"},    {"year", "NN"},  {"years", "NNS"},
    {"day", "NN"},     {"man", "NN"},     {"woman", "NN"}, {"world", "NN"},
    {"life", "NN"},    {"news", "NN"},    {"video", "NN"}, {"photo", "NN"},
};
extern const std::size_t kTaggerLexiconCount = sizeof(kTaggerLexicon) / sizeof(kTaggerLexicon[0]);

}  // namespace detail
}  // namespace cbdetect
