from delayRC.models.delayrc import DelayRC
