"""Word lists for the heuristic POS tagger used when no parse is supplied."""

from __future__ import annotations

FUNCTION_WORDS = {
    "DET": "a an the this that these those each every some any no all both either neither another such what which whose".split(),
    "PRON": (
        "i me my mine myself you your yours yourself yourselves he him his himself she her hers herself "
        "it its itself we us our ours ourselves they them their theirs themselves who whom one "
        "someone something anyone anything everyone everything nobody nothing"
    ).split(),
    "ADP": (
        "of in on at by for with from to into onto upon about above below over under between among "
        "through during before after against without within along across behind beyond via per "
        "until toward towards around near except inside outside"
    ).split(),
    "AUX": (
        "be is am are was were been being have has had having do does did doing can could may might "
        "must shall should will would ought"
    ).split(),
    "CCONJ": "and or but nor yet so".split(),
    "SCONJ": "if because although though while whereas unless since whether when where once than as".split(),
    "ADV": (
        "not never also only just very too then there here now again already still even ever quite "
        "rather always often sometimes usually however thus therefore otherwise instead else how why "
        "more most less least much further"
    ).split(),
    "PART": "'s n't".split(),
}

# Base forms; inflected forms are recovered by suffix stripping.
VERBS = set(
    """
    accept access add adjust administer allow analyze apply approve archive
    assign attach authenticate authorize begin block book build calculate call
    cancel change check choose clear click close collect compare compute
    configure confirm connect contain continue convert copy correct create
    decide define delete deliver deny deploy describe detect determine display
    download edit enable enter establish evaluate execute exit expire export
    fail fetch fill filter find finish fix follow generate get give go grant
    handle help hide identify import include indicate initialize insert install
    invoke issue keep launch leave let link list load lock log login logout
    look maintain make manage mark match merge modify monitor move need notify
    obtain open order parse pass pay perform pick place post prescribe present
    prevent print process produce prompt provide publish put query read
    receive record recover redirect refresh register reject release reload
    remain remember remove rename render repeat replace reply report request
    require reset resolve respond restart restore retrieve return review
    run save schedule search select send set show sign sort specify start
    stop store submit suggest support suspend switch take tell terminate test
    track transfer trigger try turn unlock update upload use validate verify
    view visit want warn write
    """.split()
)

# Verbs that are at least as common as nouns; tagged by context.
NOUN_VERB = set(
    """
    access book call change check click copy issue list load lock log login
    logout order
    pass post print process query record release reply report request reset
    return review run schedule search set sort start stop store support
    switch test track transfer trigger update upload use view visit
    """.split()
)

ADJECTIVES = set(
    """
    able active actual additional adverse available bad basic big clear
    common complete correct current dangerous default different easy empty
    entire existing external fake false final first free full general good
    great high important incorrect internal invalid large last late less
    little local long low main many major medical minor missing multiple
    necessary new next normal old open other own particular past personal
    possible previous primary private proper public ready real recent red
    related relevant remote required same secure separate serious short
    similar simple single small special specific standard such sure true
    unique unknown urgent useful valid various whole wrong
    """.split()
)

IRREGULAR_LEMMAS = {
    "sent": "send", "made": "make", "done": "do", "did": "do", "given": "give",
    "gave": "give", "taken": "take", "took": "take", "written": "write",
    "wrote": "write", "chosen": "choose", "chose": "choose", "got": "get",
    "gotten": "get", "kept": "keep", "left": "leave", "found": "find",
    "told": "tell", "held": "hold", "brought": "bring", "bought": "buy",
    "thought": "think", "shown": "show", "seen": "see", "saw": "see",
    "known": "know", "knew": "know", "built": "build", "paid": "pay",
    "began": "begin", "begun": "begin", "became": "become", "came": "come",
    "went": "go", "gone": "go", "driven": "drive", "drove": "drive",
    "fell": "fall", "fallen": "fall", "felt": "feel", "forgot": "forget",
    "forgotten": "forget", "hidden": "hide", "hid": "hide", "led": "lead",
    "lost": "lose", "meant": "mean", "met": "meet", "sold": "sell",
    "spent": "spend", "stood": "stand", "understood": "understand",
    "won": "win", "said": "say", "had": "have", "has": "have", "was": "be",
    "were": "be", "been": "be", "is": "be", "are": "be", "am": "be",
}

NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ance", "ence", "ship", "ism")
VERB_SUFFIXES = ("ize", "ise", "ify")
ADJ_SUFFIXES = ("ous", "ful", "able", "ible", "ive", "less", "ical", "ic", "al", "ary")
