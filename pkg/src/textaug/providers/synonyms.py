"""Built-in synonym table used by the offline mock for lexical drift.

About 200 common words. Values were picked so a substitution never equals
its key and stays a single lowercase token.
"""

SYNONYMS = {
    "about": "regarding",
    "afraid": "scared",
    "again": "anew",
    "almost": "nearly",
    "always": "constantly",
    "amazing": "astonishing",
    "angry": "furious",
    "answer": "reply",
    "anxious": "uneasy",
    "ashamed": "mortified",
    "ask": "inquire",
    "awful": "dreadful",
    "bad": "terrible",
    "beautiful": "gorgeous",
    "become": "turn",
    "begin": "start",
    "believe": "think",
    "best": "finest",
    "better": "superior",
    "big": "large",
    "bit": "piece",
    "bored": "weary",
    "boring": "dull",
    "break": "shatter",
    "bright": "radiant",
    "bring": "carry",
    "brave": "courageous",
    "build": "construct",
    "busy": "occupied",
    "buy": "purchase",
    "calm": "serene",
    "care": "concern",
    "change": "alter",
    "cheap": "inexpensive",
    "choose": "pick",
    "clean": "spotless",
    "clear": "obvious",
    "close": "shut",
    "cold": "chilly",
    "come": "arrive",
    "comfort": "solace",
    "cool": "chill",
    "crazy": "wild",
    "cry": "weep",
    "cute": "adorable",
    "dark": "gloomy",
    "day": "daytime",
    "dead": "deceased",
    "dear": "beloved",
    "decide": "determine",
    "deep": "profound",
    "difficult": "hard",
    "dirty": "filthy",
    "down": "downward",
    "dream": "fantasy",
    "drink": "sip",
    "early": "soon",
    "easy": "simple",
    "eat": "devour",
    "embarrassed": "mortified",
    "end": "finish",
    "enjoy": "relish",
    "enough": "sufficient",
    "entire": "whole",
    "evening": "dusk",
    "every": "each",
    "excited": "thrilled",
    "fall": "tumble",
    "famous": "renowned",
    "fast": "quick",
    "fear": "dread",
    "feel": "sense",
    "feeling": "emotion",
    "few": "scant",
    "find": "locate",
    "fine": "okay",
    "finish": "complete",
    "first": "foremost",
    "fix": "repair",
    "forget": "overlook",
    "friend": "pal",
    "fun": "amusement",
    "funny": "hilarious",
    "get": "obtain",
    "give": "offer",
    "glad": "pleased",
    "go": "proceed",
    "good": "fine",
    "great": "grand",
    "grief": "sorrow",
    "happy": "joyful",
    "hard": "tough",
    "hate": "despise",
    "have": "possess",
    "hear": "listen",
    "heart": "soul",
    "help": "assist",
    "here": "hither",
    "hold": "grip",
    "home": "house",
    "hope": "wish",
    "hot": "scorching",
    "huge": "enormous",
    "hurt": "ache",
    "idea": "notion",
    "important": "crucial",
    "job": "occupation",
    "joy": "delight",
    "keep": "retain",
    "kind": "gentle",
    "know": "understand",
    "large": "vast",
    "last": "final",
    "late": "tardy",
    "laugh": "chuckle",
    "learn": "discover",
    "leave": "depart",
    "life": "existence",
    "like": "enjoy",
    "little": "small",
    "live": "reside",
    "lonely": "isolated",
    "long": "lengthy",
    "look": "gaze",
    "lose": "misplace",
    "loud": "noisy",
    "love": "adore",
    "lucky": "fortunate",
    "mad": "irate",
    "make": "create",
    "many": "numerous",
    "maybe": "perhaps",
    "mean": "signify",
    "meet": "encounter",
    "mistake": "error",
    "moment": "instant",
    "money": "cash",
    "more": "extra",
    "morning": "dawn",
    "move": "shift",
    "much": "plenty",
    "need": "require",
    "nervous": "jittery",
    "never": "nowise",
    "new": "fresh",
    "nice": "pleasant",
    "night": "nighttime",
    "now": "presently",
    "often": "frequently",
    "old": "ancient",
    "only": "merely",
    "open": "unlock",
    "pain": "agony",
    "people": "folks",
    "perfect": "flawless",
    "person": "individual",
    "place": "spot",
    "pleased": "delighted",
    "poor": "destitute",
    "pretty": "lovely",
    "pride": "dignity",
    "proud": "honored",
    "put": "place",
    "quick": "rapid",
    "quiet": "silent",
    "quite": "rather",
    "real": "genuine",
    "really": "truly",
    "relief": "respite",
    "remember": "recall",
    "rich": "wealthy",
    "right": "correct",
    "sad": "unhappy",
    "same": "identical",
    "say": "state",
    "scared": "terrified",
    "see": "observe",
    "seem": "appear",
    "send": "dispatch",
    "show": "display",
    "shy": "timid",
    "sick": "ill",
    "silly": "foolish",
    "simple": "plain",
    "sleep": "slumber",
    "slow": "sluggish",
    "small": "tiny",
    "smart": "clever",
    "smile": "grin",
    "sorry": "apologetic",
    "speak": "talk",
    "start": "begin",
    "stay": "remain",
    "stop": "halt",
    "story": "tale",
    "strange": "odd",
    "strong": "sturdy",
    "sure": "certain",
    "surprised": "astonished",
    "take": "grab",
    "talk": "chat",
    "tell": "inform",
    "terrible": "horrid",
    "thing": "object",
    "think": "ponder",
    "time": "moment",
    "tired": "exhausted",
    "today": "presently",
    "together": "jointly",
    "true": "accurate",
    "try": "attempt",
    "turn": "rotate",
    "ugly": "hideous",
    "understand": "grasp",
    "upset": "distressed",
    "use": "employ",
    "very": "extremely",
    "wait": "linger",
    "walk": "stroll",
    "want": "desire",
    "warm": "toasty",
    "watch": "observe",
    "way": "manner",
    "weird": "bizarre",
    "whole": "entire",
    "win": "triumph",
    "wish": "hope",
    "wonderful": "marvelous",
    "word": "term",
    "work": "labor",
    "world": "globe",
    "worried": "troubled",
    "worry": "fret",
    "wrong": "incorrect",
    "year": "annum",
    "young": "youthful",
}
