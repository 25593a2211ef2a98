"""Builtin text used to pretrain the committed checkpoints.

Short multilingual sentences in the eight pipeline languages plus a few
formatted-input/target pairs for the generator. Kept inside the service so
checkpoint building needs nothing from the pipeline package.
"""

SENTENCES = [
    "The work was first published in 1995.",
    "It received several national awards.",
    "Critics compared it to earlier classics.",
    "The author toured seven cities that year.",
    "A film adaptation followed in 2001.",
    "Early reviews in the national press were mixed.",
    "Sales figures improved after the award announcement.",
    "A revised translation appeared a decade later.",
    "The committee announced the prize in spring.",
    "Archival letters describe the drafting process.",
    "यह एक प्रसिद्ध रचना है।",
    "लेखक को कई पुरस्कार मिले।",
    "कहानी एक छोटे गाँव से शुरू होती है।",
    "आलोचकों ने इसकी प्रशंसा की।",
    "এটি একটি বিখ্যাত রচনা।",
    "লেখক বহু পুরস্কার পেয়েছেন।",
    "সমালোচকেরা এটির প্রশংসা করেছেন।",
    "இது ஒரு புகழ்பெற்ற படைப்பு.",
    "எழுத்தாளர் பல விருதுகள் பெற்றார்.",
    "விமர்சகர்கள் இதைப் பாராட்டினர்.",
    "ഇത് പ്രശസ്തമായ ഒരു കൃതിയാണ്.",
    "എഴുത്തുകാരന് നിരവധി പുരസ്കാരങ്ങൾ ലഭിച്ചു.",
    "ही एक प्रसिद्ध रचना आहे।",
    "लेखकाला अनेक पुरस्कार मिळाले।",
    "ଏହା ଏକ ପ୍ରସିଦ୍ଧ ରଚନା।",
    "ଲେଖକ ଅନେକ ପୁରସ୍କାର ପାଇଛନ୍ତି।",
    "ਇਹ ਇੱਕ ਪ੍ਰਸਿੱਧ ਰਚਨਾ ਹੈ।",
    "ਲੇਖਕ ਨੂੰ ਕਈ ਇਨਾਮ ਮਿਲੇ।",
]

GENERATION_PAIRS = [
    (
        "en | Borrowed Light | Reception | The work was first published in 1995. It received several national awards.",
        "The work appeared in 1995 and won national awards.",
    ),
    (
        "hi | Borrowed Light | Reception | यह एक प्रसिद्ध रचना है। लेखक को कई पुरस्कार मिले।",
        "यह रचना प्रसिद्ध है और पुरस्कृत हुई।",
    ),
    (
        "en | River Crossing | Production | A film adaptation followed in 2001. Critics compared it to earlier classics.",
        "The 2001 adaptation drew comparisons to classics.",
    ),
    (
        "ta | River Crossing | Production | இது ஒரு புகழ்பெற்ற படைப்பு. விமர்சகர்கள் இதைப் பாராட்டினர்.",
        "இந்தப் படைப்பு பாராட்டு பெற்றது.",
    ),
    (
        "bn | A. K. Devi | Early life | এটি একটি বিখ্যাত রচনা। লেখক বহু পুরস্কার পেয়েছেন।",
        "রচনাটি বিখ্যাত এবং পুরস্কৃত।",
    ),
    (
        "en | S. Bose | Works | Early reviews in the national press were mixed. Sales figures improved after the award announcement.",
        "Reviews were mixed but sales rose after the award.",
    ),
    (
        "mr | S. Bose | Works | ही एक प्रसिद्ध रचना आहे। लेखकाला अनेक पुरस्कार मिळाले।",
        "ही रचना प्रसिद्ध व पुरस्कृत आहे।",
    ),
    (
        "pa | R. Sharma | Career | ਇਹ ਇੱਕ ਪ੍ਰਸਿੱਧ ਰਚਨਾ ਹੈ। ਲੇਖਕ ਨੂੰ ਕਈ ਇਨਾਮ ਮਿਲੇ।",
        "ਇਹ ਰਚਨਾ ਪ੍ਰਸਿੱਧ ਹੈ ਅਤੇ ਇਨਾਮ ਜਿੱਤੀ।",
    ),
]
