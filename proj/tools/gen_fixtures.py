#!/usr/bin/env python3
"""Regenerate the plain-text fixtures under data/fixtures.

The output is deterministic; rerunning it rewrites identical files.

    python3 tools/gen_fixtures.py
"""
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parents[1]
OUT = ROOT / "data" / "fixtures"

QUOTE_COUNT = 1665

OPENERS = [
    "Every day", "A quiet mind", "The best journeys", "Small steps", "Courage", "Kindness",
    "Patience", "A good meal", "Curiosity", "Hard work", "True friendship", "Simple things",
    "Hope", "Gratitude", "The morning light", "A brave heart", "Honest words", "Laughter",
    "Creativity", "Slow progress", "An open door", "Wisdom", "Silence", "Every failure",
    "The long road", "A single spark", "Dreams", "Discipline", "Change", "Home",
    "Good company", "Fresh starts", "A warm cup", "Focus", "Joy", "Learning", "Music",
]
MIDDLES = [
    "is the beginning of", "always leads to", "teaches us", "grows into", "is worth more than",
    "makes room for", "turns into", "is the secret of", "opens the way to", "carries the seed of",
    "builds", "outlasts", "is stronger than", "lights the path to", "is the quiet form of",
]
ENDINGS = [
    "something great", "a better tomorrow", "a happy life", "real freedom", "lasting peace",
    "new ideas", "true success", "the next adventure", "a calm heart", "every victory",
    "a wiser self", "many small wonders", "the strength we need", "the life we want",
    "honest joy", "deeper roots", "bright mornings",
]
AUTHORS = [
    "Ada Lindqvist", "Marco Bellini", "Ines Carvalho", "Tomas Novak", "Priya Raman",
    "Hana Sato", "Liam Okafor", "Elena Petrova", "Jonas Weber", "Sofia Marin",
    "Noah Fischer", "Amara Diallo", "Lucia Romano", "Oskar Berg", "Mei Chen", "Unknown",
]

CTAS = [
    "What do you think about it?",
    "How was your day?",
    "What should I post next?",
    "Would you try this?",
    "Tell me in the comments!",
    "Which one is your favourite?",
]

EMOJI_MAP = [
    ("cat", "🐱"), ("kitten", "🐱"), ("kitty", "🐱"), ("dog", "🐶"), ("puppy", "🐶"),
    ("food", "🍽️"), ("pizza", "🍕"), ("pasta", "🍝"), ("burger", "🍔"), ("cake", "🍰"),
    ("coffee", "☕"), ("bread", "🍞"), ("salad", "🥗"), ("fruit", "🍓"), ("strawberry", "🍓"),
    ("car", "🚗"), ("cars", "🚗"), ("road", "🛣️"), ("race", "🏁"), ("engine", "⚙️"),
    ("sun", "☀️"), ("sunny", "☀️"), ("sunset", "🌇"), ("flower", "🌸"), ("flowers", "🌸"),
    ("love", "❤️"), ("heart", "❤️"), ("sweet", "🍬"), ("happy", "😊"), ("beautiful", "✨"),
    ("night", "🌙"), ("rain", "🌧️"), ("music", "🎵"), ("book", "📚"), ("home", "🏠"),
    ("fire", "🔥"), ("hot", "🔥"), ("cold", "❄️"), ("star", "⭐"), ("art", "🎨"),
    ("painting", "🎨"), ("city", "🏙️"), ("sea", "🌊"), ("mountain", "⛰️"), ("tree", "🌳"),
]

JOY_EMOJIS = ["😀", "😃", "😄", "😁", "😊", "🥰", "😍", "🤩", "🥳", "😎"]

STYLES = ["cyberpunk", "psychedelic", "realistic", "abstract", "impressionist", "minimalist", "surreal"]
MEDIUMS = ["painting", "drawing", "sketch", "graffiti", "watercolor", "illustration"]

KEYWORD_EXCLUSIONS = ["DM", "credits", "credit", "double", "follow", "repost", "via", "tag", "link", "bio"]

STOPWORDS = [
    "a", "an", "the", "and", "or", "but", "of", "to", "in", "on", "at", "for", "with", "is", "are",
    "was", "were", "be", "this", "that", "it", "my", "your", "our", "we", "you", "i", "me", "so",
    "very", "from", "by", "as", "just", "all", "what", "how", "when", "today", "have", "has", "not",
    "do", "too", "more", "some", "about", "up", "out", "its", "she", "he", "they", "them", "her",
]

# Praise that honeypots leave on other posts; never self-promotion.
HONEYPOT_COMMENTS = [
    "So pretty!", "Amazing shot!", "Love this!", "Wow, so good!", "Beautiful!", "Great vibes!",
    "This made my day!", "Stunning!", "Looks delicious!", "So cute!", "Incredible colors!",
    "Nice one!", "Perfect!", "Absolutely gorgeous!", "Wonderful!",
]

# Ordinary comments left by real accounts.
LEGIT_COMMENTS = [
    "Love this", "Beautiful picture", "So cute", "Looks tasty", "Great colors", "Where is this?",
    "Nice shot", "Wow", "This is lovely", "I want one too", "Made me smile", "Gorgeous",
    "Such a mood", "Amazing work", "Cool car", "Yummy", "Adorable", "Great post",
]

SPAM_PATTERNS = [
    "send pic", "DM us", "dm me", "check my bio", "link in bio", "promote it on", "collab",
    "free followers", "earn money", "for a feature", "message us", "get paid",
]

SPAM_TEMPLATES = [
    "Nice! send pic to @{h} for a feature",
    "DM us @{h} for collab",
    "Hey @{h} wants to promote it on our page so dm me",
    "@{h} check my bio for free followers",
    "Earn money from home with the link in bio @{h}",
    "Amazing! send pic @{h}",
    "@{h} DM us to get paid for your photos",
    "Great content! message us @{h} for a feature",
]

HANDLES = [
    "promo_hub", "feature_page", "grow.daily", "viral_zone", "best.shots", "top_feature",
    "ig_boost", "photo_promo", "shoutout.now", "cash_club",
]

LEGIT_WITH_MENTIONS = [
    "@{h} look at this one", "@{h} we should go here", "@{h} this is so you",
]

TOPIC_TAGS = {
    "food": [
        ("food", 493_000_000), ("foodporn", 300_000_000), ("instafood", 250_000_000),
        ("foodie", 220_000_000), ("yummy", 180_000_000), ("delicious", 150_000_000),
        ("foodphotography", 120_000_000), ("foodstagram", 100_000_000), ("dinner", 90_000_000),
        ("healthyfood", 85_000_000), ("lunch", 70_000_000), ("homemade", 60_000_000),
        ("foodlover", 55_000_000), ("tasty", 50_000_000), ("breakfast", 45_000_000),
        ("cooking", 40_000_000), ("foodblogger", 38_000_000), ("italianfood", 20_000_000),
        ("pasta", 18_000_000), ("pizza", 17_000_000), ("dessert", 15_000_000),
        ("vegan", 14_000_000), ("foodgasm", 12_000_000), ("chef", 10_000_000),
        ("streetfood", 8_000_000), ("brunch", 6_000_000), ("recipe", 5_000_000),
        ("comfortfood", 3_000_000), ("foodart", 2_000_000), ("platedesign", 900_000),
    ],
    "cat": [
        ("cat", 270_000_000), ("cats", 250_000_000), ("catsofinstagram", 200_000_000),
        ("cute", 180_000_000), ("kitten", 90_000_000), ("catstagram", 80_000_000),
        ("pets", 70_000_000), ("meow", 60_000_000), ("catlover", 50_000_000),
        ("pet", 45_000_000), ("kitty", 40_000_000), ("instacat", 35_000_000),
        ("catoftheday", 30_000_000), ("animals", 28_000_000), ("catlovers", 25_000_000),
        ("petsofinstagram", 22_000_000), ("cutecat", 18_000_000), ("kittens", 15_000_000),
        ("catlife", 12_000_000), ("catphoto", 10_000_000), ("tabby", 8_000_000),
        ("blackcat", 7_000_000), ("catsagram", 6_000_000), ("purr", 4_000_000),
        ("whiskers", 3_000_000), ("catnap", 2_500_000), ("sleepycat", 1_500_000),
        ("orangecat", 1_000_000), ("catmom", 800_000), ("catart", 500_000),
    ],
    "car": [
        ("car", 93_000_000), ("cars", 90_000_000), ("carsofinstagram", 60_000_000),
        ("auto", 40_000_000), ("supercar", 35_000_000), ("carlifestyle", 30_000_000),
        ("luxury", 28_000_000), ("carporn", 25_000_000), ("drive", 22_000_000),
        ("racing", 20_000_000), ("sportscar", 18_000_000), ("instacar", 15_000_000),
        ("carspotting", 13_000_000), ("automotive", 12_000_000), ("bmw", 11_000_000),
        ("porsche", 10_000_000), ("jdm", 9_000_000), ("classiccar", 8_000_000),
        ("carshow", 7_000_000), ("engine", 6_000_000), ("vintagecar", 5_000_000),
        ("motorsport", 4_000_000), ("carphotography", 3_500_000), ("drift", 3_000_000),
        ("turbo", 2_500_000), ("roadtrip", 2_000_000), ("musclecar", 1_500_000),
        ("cargram", 1_000_000), ("stance", 800_000), ("carart", 400_000),
    ],
}


def write_lines(name, lines):
    path = OUT / name
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def make_quotes(rng):
    combos = [(o, m, e) for o in OPENERS for m in MIDDLES for e in ENDINGS]
    rng.shuffle(combos)
    quotes = [("Stay hungry, stay foolish", "Steve Jobs")]
    for o, m, e in combos[: QUOTE_COUNT - 1]:
        quotes.append((f"{o} {m} {e}", rng.choice(AUTHORS)))
    rng.shuffle(quotes)
    return [f"{text}\t{author}" for text, author in quotes]


def make_labeled_comments(rng):
    rows = []
    for i in range(286):
        handle = HANDLES[i % len(HANDLES)]
        text = SPAM_TEMPLATES[i % len(SPAM_TEMPLATES)].format(h=handle)
        # Some spam arrives late and is caught by pattern only.
        latency = rng.randint(5, 120) if i % 5 else rng.randint(600, 20000)
        rows.append((text, latency, "spam"))
    for i in range(14):
        if i < 3:
            text = LEGIT_WITH_MENTIONS[i].format(h=HANDLES[i])
            latency = rng.randint(900, 40000)
        else:
            text = LEGIT_COMMENTS[i]
            latency = rng.randint(30, 40000)
        rows.append((text, latency, "legit"))
    rng.shuffle(rows)
    return ["text,latency_seconds,label"] + [f"{t},{lat},{lab}" for t, lat, lab in rows]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20230501)
    write_lines("quotes.txt", make_quotes(rng))
    write_lines("cta.txt", CTAS)
    write_lines("emoji_map.txt", [f"{w}\t{e}" for w, e in EMOJI_MAP])
    write_lines("joy_emojis.txt", JOY_EMOJIS)
    write_lines("styles.txt", STYLES)
    write_lines("mediums.txt", MEDIUMS)
    write_lines("keyword_exclusions.txt", KEYWORD_EXCLUSIONS)
    write_lines("stopwords_en.txt", STOPWORDS)
    write_lines("honeypot_comments.txt", HONEYPOT_COMMENTS)
    write_lines("legit_comments.txt", LEGIT_COMMENTS)
    write_lines("spam_patterns.txt", SPAM_PATTERNS)
    write_lines("spam_templates.txt", SPAM_TEMPLATES)
    write_lines("spam_handles.txt", HANDLES)
    write_lines("labeled_comments.csv", make_labeled_comments(rng))
    for topic, tags in TOPIC_TAGS.items():
        write_lines(f"hashtags_{topic}.txt", [f"{t}\t{c}" for t, c in tags])
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
