/// (feature, phrase containing it, minimal phrase without it)
pub const CASES: &[(&str, &str, &str)] = &[
    ("that_verb_comp", "I said that he went.", "I said he went."),
    (
        "that_adj_comp",
        "I'm glad that you like it.",
        "I'm glad you like it.",
    ),
    (
        "wh_clause",
        "I believed what he told me.",
        "I believed him.",
    ),
    (
        "present_participle",
        "Stuffing his mouth with cookies, Joe ran out the door.",
        "Joe ran out the door.",
    ),
    (
        "past_participle",
        "Built in a single week, the house would stand for fifty years.",
        "The house would stand for fifty years.",
    ),
    (
        "past_participle_whiz",
        "We liked the solution produced by this process.",
        "We liked the solution.",
    ),
    (
        "present_participle_whiz",
        "They studied the event causing this decline.",
        "They studied the event.",
    ),
    ("that_subj", "the dog that bit me", "the dog bit me"),
    ("that_obj", "the dog that I saw", "I saw the dog"),
    (
        "wh_subj",
        "the man who likes popcorn",
        "the man likes popcorn",
    ),
    ("wh_obj", "the man who Sally likes", "Sally likes the man"),
    (
        "pied_piping",
        "the manner in which he was told",
        "the manner he was told",
    ),
    (
        "sentence_relatives",
        "Bob likes fried mangoes, which is disgusting.",
        "Bob likes fried mangoes.",
    ),
    ("adj_attr", "the big horse", "the horse"),
    ("adj_pred", "The horse is big.", "The horse is here."),
    ("that_deletion", "I think he went.", "I went."),
    (
        "stranded_preposition",
        "the candidate that I was thinking of",
        "the candidate I was thinking about today",
    ),
    (
        "split_infinitive",
        "He wants to convincingly prove that it works.",
        "He wants to prove that it works.",
    ),
    (
        "split_auxiliary",
        "They were apparently shown to work.",
        "They were shown to work.",
    ),
    (
        "phrasal_coordination",
        "We bought apples and oranges.",
        "We bought apples.",
    ),
    (
        "neg_synthetic",
        "No answer is good enough for Jones.",
        "The answer is good enough for Jones.",
    ),
    (
        "neg_analytic",
        "That isn't good enough.",
        "That is good enough.",
    ),
    ("conjuncts", "However, we stayed.", "We stayed."),
    ("downtoners", "It was barely visible.", "It was visible."),
    ("hedges", "It was almost done.", "It was done."),
    (
        "amplifiers",
        "It was absolutely perfect.",
        "It was perfect.",
    ),
    ("emphatics", "It was really good.", "It was good."),
    ("discourse_particles", "Well, I went home.", "I went home."),
    ("modal_possibility", "You can go.", "You go."),
    ("modal_necessity", "You must go.", "You go."),
    ("modal_predictive", "You will go.", "You go."),
    ("verb_public", "They declared victory.", "They won."),
    ("verb_private", "I believe you.", "I hit you."),
    ("verb_suasive", "They proposed a plan.", "They made a plan."),
    ("verb_seem", "It seems fine.", "It is fine."),
    ("contractions", "I can't go.", "I cannot go."),
    (
        "clausal_coordination",
        "It rained. And then it stopped.",
        "It rained and stopped.",
    ),
    ("because", "We left because it rained.", "We left."),
    ("though", "We left although it was early.", "We left early."),
    ("if", "We will leave if it rains.", "We will leave."),
    ("other_adv_sub", "We read while it rained.", "We read."),
    ("past_tense", "She walked home.", "She walks home."),
    (
        "perfect_aspect",
        "They have finished the work.",
        "They finish the work.",
    ),
    ("present_tense", "He works here.", "He worked here."),
    (
        "place_adverbials",
        "The kids played outside.",
        "The kids played.",
    ),
    ("time_adverbials", "We met yesterday.", "We met."),
    ("first_person_pronouns", "I left.", "Sam left."),
    ("second_person_pronouns", "You left.", "Sam left."),
    ("third_person_pronouns", "She left.", "Sam left."),
    ("pronoun_it", "It broke.", "The cup broke."),
    (
        "demonstrative_pronoun",
        "This is mine.",
        "The book is mine.",
    ),
    ("indefinite_pronoun", "Somebody called.", "Sam called."),
    (
        "proverb_do",
        "Sam cooks more than I do.",
        "Sam cooks more than me.",
    ),
    ("wh_question", "What did you see?", "You saw the bird."),
    (
        "nominalization",
        "The information surprised us.",
        "The cat surprised us.",
    ),
    ("gerunds", "Swimming is fun.", "The sea is fun."),
    ("other_nouns", "The cat sat.", "It sat."),
    (
        "agentless_passives",
        "The window was broken.",
        "Sam broke the window.",
    ),
    (
        "by_passives",
        "The window was broken by Sam.",
        "Sam broke the window.",
    ),
    ("be_main_verb", "The sky is blue.", "The sky looks blue."),
    (
        "existential_there",
        "There is a cat here.",
        "A cat sits here.",
    ),
    ("infinitives", "I want to leave.", "I leave."),
    ("prepositions", "The cat sat on the mat.", "The cat sat."),
    ("adverbs", "She ran quickly.", "She ran."),
    ("demonstratives", "This book is mine.", "The book is mine."),
];
