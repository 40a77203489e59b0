package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class ThrowsKitchenSinkPos {
  void run(Channel ch) throws IOException, java.text.ParseException, InterruptedException {
    ch.read();
    Text.parse("x");
    Clock.sleep(1);
  }
}
