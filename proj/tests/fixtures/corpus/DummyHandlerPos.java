package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class DummyHandlerPos {
  void run(Channel ch) {
    try {
      ch.read();
    } catch (IOException e) {
      e.printStackTrace();
    }
  }
}
